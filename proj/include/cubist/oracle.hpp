#pragma once

// Brute-force graded-dimension engine for the quiver algebras attached to a
// Cubist subset.  Dimensions dim e_y A_n e_x are computed directly from the
// quiver and its quadratic relations by exact linear algebra: the space of
// length-n paths from x to y is quotiented by all embedded relations
// p * rho * s with matching endpoints.  Every path of length n from x stays
// within L1 distance n of x, so the enumeration is finite and complete.

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "point.hpp"
#include "qmatrix.hpp"
#include "set.hpp"

namespace cubist {

enum class AlgebraKind {
    UOfSet, // U_X: doubled quiver on X, square/supercommutation/Heisenberg
    VOfSet, // V_X: doubled quiver on X, commutation + Milnor at crooked points
    VFull,  // V_r on all of Z^r
};

/// Sign convention for the U relations.  Standard uses plus signs in the
/// supercommutation family; Alternating is the rescaled presentation with
/// minus signs and (-1)^{x_i} factors, which must give identical dimensions.
enum class SignVariant { Standard, Alternating };

struct QuiverPresentation {
    AlgebraKind kind;
    int rank;
    std::optional<CubistSet> set; // absent for VFull
    SignVariant signs = SignVariant::Standard;

    static QuiverPresentation u_of(const CubistSet& s,
                                   SignVariant v = SignVariant::Standard) {
        return {AlgebraKind::UOfSet, s.rank(), s, v};
    }
    static QuiverPresentation v_of(const CubistSet& s) {
        return {AlgebraKind::VOfSet, s.rank(), s, SignVariant::Standard};
    }
    static QuiverPresentation v_full(int rank) {
        return {AlgebraKind::VFull, rank, std::nullopt, SignVariant::Standard};
    }

    bool vertex(const Point& v) const {
        return kind == AlgebraKind::VFull ? true : set->contains(v);
    }
};

namespace oracle_detail {

// A step is one arrow: axis 1..r, direction +1/-1, encoded in one int.
inline int encode_step(int axis, int dir) { return (axis - 1) * 2 + (dir > 0 ? 1 : 0); }
inline int step_axis(int s) { return s / 2 + 1; }
inline int step_dir(int s) { return s % 2 ? +1 : -1; }

using StepSeq = std::vector<int>;

struct RelTerm {
    int s1, s2;
    long long coeff;
};
using Relation = std::vector<RelTerm>;

/// Quadratic relations based at vertex v, with terms whose intermediate
/// vertex leaves the vertex set dropped.
inline std::vector<Relation> relations_at(const QuiverPresentation& pres,
                                          const Point& v) {
    const int r = pres.rank;
    std::vector<Relation> out;
    auto ok = [&](const Point& p) { return pres.vertex(p); };
    auto moved = [&](const Point& p, int axis, int dir) { return step(p, axis, dir); };

    if (pres.kind == AlgebraKind::UOfSet) {
        bool alt = pres.signs == SignVariant::Alternating;
        // squares
        for (int i = 1; i <= r; ++i)
            for (int dir : {+1, -1}) {
                Point mid = moved(v, i, dir);
                if (!ok(mid) || !ok(moved(mid, i, dir))) continue;
                out.push_back({{encode_step(i, dir), encode_step(i, dir), 1}});
            }
        // supercommutation, same-direction pairs
        for (int i = 1; i <= r; ++i)
            for (int j = i + 1; j <= r; ++j)
                for (int dir : {+1, -1}) {
                    Point end = moved(moved(v, i, dir), j, dir);
                    if (!ok(end)) continue;
                    Relation rel;
                    if (ok(moved(v, i, dir)))
                        rel.push_back({encode_step(i, dir), encode_step(j, dir), 1});
                    if (ok(moved(v, j, dir)))
                        rel.push_back(
                            {encode_step(j, dir), encode_step(i, dir), alt ? -1ll : 1ll});
                    if (!rel.empty()) out.push_back(std::move(rel));
                }
        // supercommutation, mixed pairs (i up, j down), ordered
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j) {
                if (i == j) continue;
                Point end = moved(moved(v, i, +1), j, -1);
                if (!ok(end)) continue;
                Relation rel;
                if (ok(moved(v, i, +1)))
                    rel.push_back({encode_step(i, +1), encode_step(j, -1), 1});
                if (ok(moved(v, j, -1)))
                    rel.push_back({encode_step(j, -1), encode_step(i, +1), alt ? -1ll : 1ll});
                if (!rel.empty()) out.push_back(std::move(rel));
            }
        // Heisenberg: consecutive loop sums agree
        for (int i = 1; i < r; ++i) {
            Relation rel;
            auto add_loops = [&](int axis, long long sign) {
                long long down = sign, up = sign;
                if (alt) {
                    long long parity = (v[axis - 1] % 2 + 2) % 2 == 0 ? 1 : -1;
                    down = sign * parity;
                    up = -sign * parity;
                }
                if (ok(moved(v, axis, -1)))
                    rel.push_back({encode_step(axis, -1), encode_step(axis, +1), down});
                if (ok(moved(v, axis, +1)))
                    rel.push_back({encode_step(axis, +1), encode_step(axis, -1), up});
            };
            add_loops(i, 1);
            add_loops(i + 1, -1);
            if (!rel.empty()) out.push_back(std::move(rel));
        }
        return out;
    }

    // V relations: commutation families need every vertex of the little
    // square present.
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            for (int dir : {+1, -1}) {
                if (!ok(moved(v, i, dir)) || !ok(moved(v, j, dir)) ||
                    !ok(moved(moved(v, i, dir), j, dir)))
                    continue;
                out.push_back({{encode_step(i, dir), encode_step(j, dir), 1},
                               {encode_step(j, dir), encode_step(i, dir), -1}});
            }
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            if (i == j) continue;
            if (!ok(moved(v, i, +1)) || !ok(moved(v, j, -1)) ||
                !ok(moved(moved(v, i, +1), j, -1)))
                continue;
            out.push_back({{encode_step(i, +1), encode_step(j, -1), 1},
                           {encode_step(j, -1), encode_step(i, +1), -1}});
        }
    for (int i = 1; i <= r; ++i) {
        if (!ok(moved(v, i, +1)) || !ok(moved(v, i, -1))) continue;
        out.push_back({{encode_step(i, +1), encode_step(i, -1), 1},
                       {encode_step(i, -1), encode_step(i, +1), -1}});
    }
    // Milnor relation: at every vertex for the full algebra, at crooked
    // vertices for V_X, taking the downward loop where it exists.
    bool milnor = pres.kind == AlgebraKind::VFull || pres.set->is_crooked(v);
    if (milnor) {
        Relation rel;
        for (int i = 1; i <= r; ++i) {
            if (ok(moved(v, i, -1)))
                rel.push_back({encode_step(i, -1), encode_step(i, +1), 1});
            else if (ok(moved(v, i, +1)))
                rel.push_back({encode_step(i, +1), encode_step(i, -1), 1});
        }
        if (!rel.empty()) out.push_back(std::move(rel));
    }
    return out;
}

template <typename Int>
inline bool bareiss_rank(std::vector<std::vector<Int>>& m, int& rank_out);

template <>
inline bool bareiss_rank<long long>(std::vector<std::vector<long long>>& m,
                                    int& rank_out) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    long long prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            if (m[i][col] == 0 && prev == 1) continue;
            for (int j = col + 1; j < cols; ++j) {
                long long a, b;
                if (__builtin_mul_overflow(m[i][j], m[rank][col], &a)) return false;
                if (__builtin_mul_overflow(m[i][col], m[rank][j], &b)) return false;
                long long t;
                if (__builtin_sub_overflow(a, b, &t)) return false;
                m[i][j] = t / prev; // exact by the fraction-free invariant
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    rank_out = rank;
    return true;
}

template <>
inline bool bareiss_rank<mpz_class>(std::vector<std::vector<mpz_class>>& m,
                                    int& rank_out) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                mpz_class t = m[i][j] * m[rank][col] - m[i][col] * m[rank][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    rank_out = rank;
    return true;
}

/// Exact rank over the rationals.  Fraction-free elimination runs on
/// machine integers first and falls back to arbitrary precision if any
/// intermediate value would overflow.
inline int exact_rank(const std::vector<std::map<int, long long>>& sparse_rows,
                      int cols) {
    if (sparse_rows.empty() || cols == 0) return 0;
    std::vector<std::vector<long long>> m(sparse_rows.size(),
                                          std::vector<long long>(cols, 0));
    for (std::size_t i = 0; i < sparse_rows.size(); ++i)
        for (auto& [j, c] : sparse_rows[i]) m[i][j] = c;
    int rank = 0;
    if (bareiss_rank<long long>(m, rank)) return rank;
    std::vector<std::vector<mpz_class>> big(sparse_rows.size(),
                                            std::vector<mpz_class>(cols, 0));
    for (std::size_t i = 0; i < sparse_rows.size(); ++i)
        for (auto& [j, c] : sparse_rows[i]) big[i][j] = static_cast<long>(c);
    bareiss_rank<mpz_class>(big, rank);
    return rank;
}

/// Path/relation enumeration from a fixed start vertex, restricted to the
/// L1 ball of a given radius about it (radius >= n loses nothing).
struct PathSpace {
    const QuiverPresentation& pres;
    Point start;
    int region_radius;

    std::map<std::pair<Point, int>, std::vector<std::pair<StepSeq, Point>>> memo;

    PathSpace(const QuiverPresentation& p, Point s, int radius)
        : pres(p), start(std::move(s)), region_radius(radius) {}

    bool vertex_ok(const Point& v) const {
        return l1_distance(v, start) <= region_radius && pres.vertex(v);
    }

    const std::vector<std::pair<StepSeq, Point>>& paths_from(const Point& v, int len) {
        auto key = std::make_pair(v, len);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<std::pair<StepSeq, Point>> result;
        if (len == 0) {
            result.push_back({{}, v});
        } else {
            for (int s = 0; s < 2 * pres.rank; ++s) {
                Point w = step(v, step_axis(s), step_dir(s));
                if (!vertex_ok(w)) continue;
                for (const auto& [seq, endp] : paths_from(w, len - 1)) {
                    StepSeq full;
                    full.reserve(seq.size() + 1);
                    full.push_back(s);
                    full.insert(full.end(), seq.begin(), seq.end());
                    result.push_back({std::move(full), endp});
                }
            }
        }
        return memo.emplace(std::move(key), std::move(result)).first->second;
    }
};

} // namespace oracle_detail

/// Dimensions of e_y A_n e_x for all endpoints y at once.
inline std::map<Point, long long> graded_dims_from(const QuiverPresentation& pres,
                                                   const Point& x, int degree,
                                                   int region_radius = -1) {
    using namespace oracle_detail;
    require_rank(x, pres.rank, "graded_dims_from");
    if (degree < 0) throw std::invalid_argument("graded_dims_from: negative degree");
    if (!pres.vertex(x))
        throw std::domain_error("graded_dims_from: " + point_to_string(x) +
                                " is not a quiver vertex");
    if (region_radius < 0) region_radius = degree;
    if (region_radius < degree)
        throw std::invalid_argument("graded_dims_from: region smaller than degree");

    PathSpace space(pres, x, region_radius);

    // Column index per endpoint.
    std::map<Point, std::map<StepSeq, int>> columns;
    for (const auto& [seq, endp] : space.paths_from(x, degree))
        columns[endp].emplace(seq, 0);
    for (auto& [endp, cols] : columns) {
        int idx = 0;
        for (auto& [seq, id] : cols) id = idx++;
    }

    // Embedded relations p * rho * s, grouped by endpoint.  All terms of a
    // quadratic relation share one endpoint w, so each choice of prefix,
    // relation and suffix from w yields one row.
    std::map<Point, std::vector<std::map<int, long long>>> rel_rows;
    for (int k = 0; k + 2 <= degree; ++k) {
        for (const auto& [prefix, v] : space.paths_from(x, k)) {
            for (const Relation& rel : relations_at(pres, v)) {
                Point w = step(step(v, step_axis(rel[0].s1), step_dir(rel[0].s1)),
                               step_axis(rel[0].s2), step_dir(rel[0].s2));
                std::vector<const RelTerm*> live;
                for (const RelTerm& t : rel) {
                    Point mid = step(v, step_axis(t.s1), step_dir(t.s1));
                    Point wt = step(mid, step_axis(t.s2), step_dir(t.s2));
                    if (wt != w)
                        throw std::logic_error("relation terms with mixed endpoints");
                    if (space.vertex_ok(mid)) live.push_back(&t);
                }
                if (live.empty() || !space.vertex_ok(w)) continue;
                for (const auto& [suffix, endp] : space.paths_from(w, degree - k - 2)) {
                    std::map<int, long long> vec;
                    for (const RelTerm* t : live) {
                        StepSeq full = prefix;
                        full.push_back(t->s1);
                        full.push_back(t->s2);
                        full.insert(full.end(), suffix.begin(), suffix.end());
                        vec[columns.at(endp).at(full)] += t->coeff;
                    }
                    bool nonzero = false;
                    for (auto& [c, co] : vec)
                        if (co != 0) nonzero = true;
                    if (nonzero) rel_rows[endp].push_back(std::move(vec));
                }
            }
        }
    }

    std::map<Point, long long> dims;
    for (auto& [endp, cols] : columns) {
        int pathcount = static_cast<int>(cols.size());
        auto rit = rel_rows.find(endp);
        int rank = rit == rel_rows.end()
                       ? 0
                       : oracle_detail::exact_rank(rit->second, pathcount);
        dims[endp] = pathcount - rank;
    }
    return dims;
}

/// dim of (paths of length `degree` from x to y) modulo all embedded
/// quadratic relations, by exact rank over the rationals.
inline long long graded_dim(const QuiverPresentation& pres, const Point& x,
                            const Point& y, int degree, int region_radius = -1) {
    require_rank(y, pres.rank, "graded_dim");
    auto dims = graded_dims_from(pres, x, degree, region_radius);
    auto it = dims.find(y);
    return it == dims.end() ? 0 : it->second;
}

struct OracleMismatch {
    Point x, y;
    int degree;
    long long expected, actual;
};

struct OracleReport {
    long long comparisons = 0;
    long long mismatch_count = 0;
    std::vector<OracleMismatch> mismatches; // first few only

    bool pass() const { return mismatch_count == 0; }

    void record(const Point& x, const Point& y, int n, long long exp, long long act) {
        ++mismatch_count;
        if (mismatches.size() < 20) mismatches.push_back({x, y, n, exp, act});
    }
};

/// Coefficient of q^n in (1-q^2)^{1-r} q^d.
inline long long v_series_coefficient(int r, long long d, int n) {
    if (n < d || (n - d) % 2 != 0) return 0;
    long long k = (n - d) / 2;
    long long b = 1;
    for (int t = 1; t <= r - 2; ++t) b = b * (k + t) / t;
    return b;
}

/// Compares path-algebra dimensions against the closed-form matrices over
/// all window pairs and degrees 0..max_degree.
inline OracleReport oracle_check(const QuiverPresentation& pres, const Box& window,
                                 int max_degree) {
    OracleReport rep;
    std::vector<Point> pts;
    if (pres.kind == AlgebraKind::VFull) {
        window.for_each([&](const Point& p) { pts.push_back(p); });
    } else {
        pts = pres.set->points_in_window(window);
    }
    int r = pres.rank;
    for (const Point& x : pts) {
        std::map<Point, LaurentPoly> cu_row;
        if (pres.kind == AlgebraKind::UOfSet)
            for (const Point& y : pts)
                if (l1_distance(x, y) <= 2 * r - 2)
                    cu_row[y] = c_u_entry(*pres.set, x, y);
        for (int n = 0; n <= max_degree; ++n) {
            std::map<Point, long long> dims;
            bool have_dims = false;
            for (const Point& y : pts) {
                long long d = l1_distance(x, y);
                long long expected = 0;
                switch (pres.kind) {
                case AlgebraKind::UOfSet: {
                    auto it = cu_row.find(y);
                    if (it != cu_row.end()) expected = it->second.coefficient(n);
                    break;
                }
                case AlgebraKind::VOfSet:
                case AlgebraKind::VFull:
                    expected = v_series_coefficient(r, d, n);
                    break;
                }
                long long actual = 0;
                if (n >= d && (n - d) % 2 == 0) {
                    if (!have_dims) {
                        dims = graded_dims_from(pres, x, n);
                        have_dims = true;
                    }
                    auto it = dims.find(y);
                    actual = it == dims.end() ? 0 : it->second;
                }
                ++rep.comparisons;
                if (expected != actual) rep.record(x, y, n, expected, actual);
            }
        }
    }
    return rep;
}

} // namespace cubist
