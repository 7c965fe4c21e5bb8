#pragma once

// Windowed graded decomposition and Cartan matrices over Laurent
// polynomials / truncated series, plus the verifier for the matrix
// identities they satisfy.
//
// Window inflation is automatic and internal per operation: callers reason
// about one box, and every summation index set is enumerated from exact
// support bounds, never by truncating an infinite product.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "point.hpp"
#include "set.hpp"

namespace cubist {

/// Sparse matrix indexed by lattice-point lists.  Unstored entries are zero.
template <typename EntryT>
struct QMatrix {
    std::vector<Point> rows, cols;
    std::map<std::pair<int, int>, EntryT> entries;

    EntryT get(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? EntryT{} : it->second;
    }

    void set(int i, int j, EntryT v) {
        if (v.is_zero()) return;
        entries[{i, j}] = std::move(v);
    }

    int row_index(const Point& x) const {
        auto it = std::lower_bound(rows.begin(), rows.end(), x);
        if (it == rows.end() || *it != x) return -1;
        return static_cast<int>(it - rows.begin());
    }
};

using PolyMatrix = QMatrix<LaurentPoly>;
using SeriesMatrix = QMatrix<TruncSeries>;

namespace detail {

inline LaurentPoly q_power(long long d) {
    return LaurentPoly::monomial(1, static_cast<int>(d));
}

inline LaurentPoly neg_q_power(long long d) {
    return LaurentPoly::monomial(d % 2 == 0 ? 1 : -1, static_cast<int>(d));
}

} // namespace detail

/// Graded decomposition matrix of U_X over a window: entry (x,y) is
/// q^{d(x,y)} when y lies in the facet of x, else 0.
inline PolyMatrix d_u(const CubistSet& set, const Box& window) {
    PolyMatrix m;
    m.rows = m.cols = set.points_in_window(window);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i) {
        for (const Point& y : facet_points(set.facet_of(m.rows[i]), set.rank())) {
            int j = m.row_index(y);
            if (j >= 0) m.set(i, j, detail::q_power(l1_distance(m.rows[i], y)));
        }
    }
    return m;
}

/// Graded decomposition matrix of V_X over a window: entry (x,y) is
/// q^{d(x,y)} when y lies in the cone of x, else 0.  Rows are window
/// truncations of the infinite true rows.
inline PolyMatrix d_v(const CubistSet& set, const Box& window) {
    PolyMatrix m;
    m.rows = m.cols = set.points_in_window(window);
    std::vector<int> axis(m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        axis[i] = set.facet_axis(m.rows[i]);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(m.cols.size()); ++j)
            if (set.in_cone_with_axis(m.rows[i], m.cols[j], axis[i]))
                m.set(i, j, detail::q_power(l1_distance(m.rows[i], m.cols[j])));
    return m;
}

/// One exact graded Cartan entry of U_X, by the facet-incidence sum
///   C(q)_{xy} = sum over z with x,y in lambda(z) of q^{d(x,z)+d(y,z)}.
/// The anchor z always lies within L1 distance r-1 of x, so the sum is
/// finite and complete.
inline LaurentPoly c_u_entry(const CubistSet& set, const Point& x, const Point& y) {
    int r = set.rank();
    LaurentPoly out;
    Box ball = Box::cube(r, r - 1, &x);
    ball.for_each([&](const Point& z) {
        if (l1_distance(z, x) > r - 1 || !set.contains(z)) return;
        bool has_x = false, has_y = false;
        for (const Point& v : facet_points(set.facet_of(z), r)) {
            if (v == x) has_x = true;
            if (v == y) has_y = true;
        }
        if (has_x && has_y)
            out += detail::q_power(l1_distance(x, z) + l1_distance(y, z));
    });
    return out;
}

/// One exact graded Cartan entry of U_X by the local interval formula
///   C(q)_{xy} = sum over z in I(x) n I(y) of q^{r-1}[r - d(z,x) - d(z,y)]_q.
inline LaurentPoly c_u_local_entry(const CubistSet& set, const Point& x, const Point& y) {
    int r = set.rank();
    LaurentPoly out;
    Point lo(r), hi(r);
    for (int i = 0; i < r; ++i) {
        lo[i] = std::max(x[i], y[i]);
        hi[i] = std::min(x[i], y[i]) + 1;
        if (lo[i] > hi[i]) return out;
    }
    Box(lo, hi).for_each([&](const Point& z) {
        if (!set.contains(z)) return;
        long long m = r - l1_distance(z, x) - l1_distance(z, y);
        out += detail::q_power(r - 1) * quantum_integer(m);
    });
    return out;
}

/// Exact sparse Cartan rows of U_X for a list of row points, built in one
/// facet pass: every anchor z with x in its facet lies within L1 distance
/// r-1 of x, so scanning the inflated bounding box of the rows is complete.
inline std::map<Point, std::map<Point, LaurentPoly>>
c_u_rows(const CubistSet& set, const std::vector<Point>& rows) {
    std::map<Point, std::map<Point, LaurentPoly>> out;
    if (rows.empty()) return out;
    int r = set.rank();
    std::set<Point> rowset;
    Point lo = rows[0], hi = rows[0];
    for (const Point& x : rows) {
        rowset.insert(x);
        out[x];
        for (int i = 0; i < r; ++i) {
            lo[i] = std::min(lo[i], x[i]);
            hi[i] = std::max(hi[i], x[i]);
        }
    }
    Box region = Box(lo, hi).inflated(r - 1);
    region.for_each([&](const Point& z) {
        if (!set.contains(z)) return;
        std::vector<Point> fpts = facet_points(set.facet_of(z), r);
        for (const Point& u : fpts) {
            if (!rowset.count(u)) continue;
            long long du = l1_distance(u, z);
            auto& row = out[u];
            for (const Point& v : fpts)
                row[v] += detail::q_power(du + l1_distance(v, z));
        }
    });
    for (auto& [x, row] : out)
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
    return out;
}

inline PolyMatrix c_u_brauer(const CubistSet& set, const Box& window) {
    PolyMatrix m;
    m.rows = m.cols = set.points_in_window(window);
    auto rows = c_u_rows(set, m.rows);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i)
        for (auto& [y, v] : rows[m.rows[i]]) {
            int j = m.row_index(y);
            if (j >= 0) m.set(i, j, v);
        }
    return m;
}

inline PolyMatrix c_u_local(const CubistSet& set, const Box& window) {
    PolyMatrix m;
    m.rows = m.cols = set.points_in_window(window);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(m.cols.size()); ++j)
            m.set(i, j, c_u_local_entry(set, m.rows[i], m.cols[j]));
    return m;
}

/// Graded Cartan matrix of V_X to cutoff N: entry (x,y) is
/// (1-q^2)^{1-r} q^{d(x,y)} as a truncated series.
inline SeriesMatrix c_v(const CubistSet& set, const Box& window, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("c_v: negative cutoff");
    SeriesMatrix m;
    m.rows = m.cols = set.points_in_window(window);
    TruncSeries geo = geometric_power(set.rank(), cutoff);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(m.cols.size()); ++j) {
            long long d = l1_distance(m.rows[i], m.cols[j]);
            if (d > cutoff) continue;
            m.set(i, j, geo.shifted(static_cast<int>(d)));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Identity verification
// ---------------------------------------------------------------------------

struct VerifyFailure {
    Point x, y;
    std::string lhs, rhs;
};

struct VerifyCheck {
    std::string name;
    long long failure_count = 0;
    std::vector<VerifyFailure> failures; // first few only

    bool pass() const { return failure_count == 0; }

    void record(const Point& x, const Point& y, std::string lhs, std::string rhs) {
        ++failure_count;
        if (failures.size() < 20)
            failures.push_back({x, y, std::move(lhs), std::move(rhs)});
    }
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }
};

namespace detail {

/// Shared scratch data for the verifier: window points, a membership/axis
/// cache over the inflated region, and exact sparse C_U rows for the window.
struct VerifyContext {
    const CubistSet& set;
    int r;
    int cutoff;
    std::vector<Point> window_pts;
    std::vector<Point> region_pts; // X n window.inflated(cutoff)
    std::unordered_map<Point, int, PointHash> region_index;
    std::vector<int> region_axis;
    std::vector<std::vector<Point>> region_facet; // facet points per region point
    // per window point: exact sparse Cartan row of U_X
    std::vector<std::map<Point, LaurentPoly>> cu_row;
    // per window point x: region indices z with x in cone(z), d(z,x) <= cutoff
    std::vector<std::vector<int>> cone_support;
    // per window point x: region indices z with x in facet(z)
    std::vector<std::vector<int>> cofacet;

    VerifyContext(const CubistSet& s, const Box& window, int cutoff_)
        : set(s), r(s.rank()), cutoff(cutoff_) {
        window_pts = set.points_in_window(window);
        Box region = window.inflated(cutoff);
        region_pts = set.points_in_window(region);
        region_axis.resize(region_pts.size());
        region_facet.resize(region_pts.size());
        for (std::size_t i = 0; i < region_pts.size(); ++i) {
            region_index.emplace(region_pts[i], static_cast<int>(i));
            region_axis[i] = set.facet_axis(region_pts[i]);
            region_facet[i] =
                facet_points(Facet{region_pts[i], region_axis[i]}, r);
        }
        cu_row.resize(window_pts.size());
        cone_support.resize(window_pts.size());
        cofacet.resize(window_pts.size());
        for (std::size_t xi = 0; xi < window_pts.size(); ++xi) {
            const Point& x = window_pts[xi];
            Box ball = Box::cube(r, r - 1, &x);
            ball.for_each([&](const Point& z) {
                auto it = region_index.find(z);
                if (it == region_index.end()) return;
                int zi = it->second;
                bool has_x = false;
                for (const Point& v : region_facet[zi])
                    if (v == x) { has_x = true; break; }
                if (!has_x) return;
                cofacet[xi].push_back(zi);
                long long dx = l1_distance(x, z);
                for (const Point& v : region_facet[zi])
                    cu_row[xi][v] += q_power(dx + l1_distance(v, z));
            });
            for (auto it = cu_row[xi].begin(); it != cu_row[xi].end();)
                it = it->second.is_zero() ? cu_row[xi].erase(it) : std::next(it);
            for (std::size_t zi = 0; zi < region_pts.size(); ++zi) {
                if (l1_distance(region_pts[zi], x) > cutoff) continue;
                if (set.in_cone_with_axis(region_pts[zi], x, region_axis[zi]))
                    cone_support[xi].push_back(static_cast<int>(zi));
            }
        }
    }
};

} // namespace detail

/// Runs the full battery of matrix identities over a window, with every
/// summation enumerated from exact support bounds.  Polynomial checks are
/// exact; series checks are exact modulo q^(cutoff+1).  For rank 3 the
/// distance-matrix identity Dist(q) * C_U(-q) = (1-q^2)^2 * I is checked
/// as well.
inline VerifyReport verify_identities(const CubistSet& set, const Box& window,
                                      int cutoff) {
    int r = set.rank();
    if (cutoff < 2 * r)
        throw std::invalid_argument("verify_identities: cutoff must be >= 2r");
    detail::VerifyContext ctx(set, window, cutoff);
    const auto& W = ctx.window_pts;
    int n = static_cast<int>(W.size());

    VerifyReport report;
    auto check = [&](const std::string& name) -> VerifyCheck& {
        report.checks.emplace_back();
        report.checks.back().name = name;
        return report.checks.back();
    };

    std::vector<int> waxis(n);
    for (int i = 0; i < n; ++i) waxis[i] = set.facet_axis(W[i]);

    // (1) D_U built from facet enumeration vs the per-pair membership rule.
    {
        auto& c = check("du-facet-definition");
        std::vector<std::map<Point, LaurentPoly>> row(n);
        for (int i = 0; i < n; ++i)
            for (const Point& y : facet_points(Facet{W[i], waxis[i]}, r))
                row[i][y] = detail::q_power(l1_distance(W[i], y));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // y in x + F_axis with all displacements on the correct side
                const Point &x = W[i], &y = W[j];
                bool in_facet = y[waxis[i] - 1] == x[waxis[i] - 1];
                for (int k = 1; in_facet && k <= r; ++k) {
                    if (k == waxis[i]) continue;
                    int d = y[k - 1] - x[k - 1];
                    in_facet = (k < waxis[i]) ? (d == 0 || d == 1) : (d == 0 || d == -1);
                }
                LaurentPoly expect =
                    in_facet ? detail::q_power(l1_distance(x, y)) : LaurentPoly();
                auto it = row[i].find(y);
                LaurentPoly got = it == row[i].end() ? LaurentPoly() : it->second;
                if (got != expect) c.record(x, y, got.to_string(), expect.to_string());
            }
    }

    // (2) D_V entries match the cone membership rule, with unit diagonal.
    {
        auto& c = check("dv-cone-definition");
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Point &x = W[i], &y = W[j];
                int pos = 0;
                bool in_cone = true;
                for (int k = 1; k <= r; ++k)
                    if (k == waxis[i]) pos = k;
                for (int k = 1; k <= r; ++k) {
                    if (k == pos) continue;
                    int d = y[k - 1] - x[k - 1];
                    if (k < pos ? d > 0 : d < 0) { in_cone = false; break; }
                }
                if (in_cone != set.in_cone(x, y))
                    c.record(x, y, in_cone ? "cone" : "0", set.in_cone(x, y) ? "cone" : "0");
                if (i == j && !in_cone) c.record(x, y, "0", "1");
            }
        }
    }

    // (3) The local interval formula agrees with the facet-incidence sum.
    {
        auto& c = check("cu-local-equals-brauer");
        for (int i = 0; i < n; ++i) {
            const Point& x = W[i];
            Box ball = Box::cube(r, 2 * r - 2, &x);
            ball.for_each([&](const Point& y) {
                if (l1_distance(x, y) > 2 * r - 2 || !set.contains(y)) return;
                LaurentPoly local = c_u_local_entry(set, x, y);
                auto it = ctx.cu_row[i].find(y);
                LaurentPoly brauer = it == ctx.cu_row[i].end() ? LaurentPoly() : it->second;
                if (local != brauer)
                    c.record(x, y, local.to_string(), brauer.to_string());
            });
        }
    }

    // (4) C_V = D_V^T D_V coefficientwise to the cutoff.
    {
        auto& c = check("cv-brauer");
        TruncSeries geo = geometric_power(r, cutoff);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Point &x = W[i], &y = W[j];
                long long dxy = l1_distance(x, y);
                if (dxy > cutoff) continue; // both sides vanish mod q^(cutoff+1)
                LaurentPoly::term_list acc;
                for (int zi : ctx.cone_support[i]) {
                    const Point& z = ctx.region_pts[zi];
                    long long dsum = l1_distance(z, x) + l1_distance(z, y);
                    if (dsum > cutoff) continue;
                    if (!set.in_cone_with_axis(z, y, ctx.region_axis[zi])) continue;
                    acc.emplace_back(static_cast<int>(dsum), 1);
                }
                TruncSeries lhs(LaurentPoly::from_terms(std::move(acc)), cutoff);
                TruncSeries rhs = geo.shifted(static_cast<int>(dxy));
                if (!lhs.equals(rhs)) c.record(x, y, lhs.to_string(), rhs.to_string());
            }
    }

    // (5) C_U is symmetric.
    {
        auto& c = check("cu-transpose");
        for (int i = 0; i < n; ++i)
            for (auto& [y, v] : ctx.cu_row[i]) {
                int j = -1;
                auto it = std::lower_bound(W.begin(), W.end(), y);
                if (it != W.end() && *it == y) j = static_cast<int>(it - W.begin());
                if (j < 0) continue;
                auto back = ctx.cu_row[j].find(W[i]);
                LaurentPoly w = back == ctx.cu_row[j].end() ? LaurentPoly() : back->second;
                if (v != w) c.record(W[i], y, v.to_string(), w.to_string());
            }
    }

    // (6) C_V is symmetric to the cutoff.
    {
        auto& c = check("cv-transpose");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (l1_distance(W[i], W[j]) != l1_distance(W[j], W[i]))
                    c.record(W[i], W[j], "d(x,y)", "d(y,x)");
    }

    // (7) Inverse formulae for decomposition matrices, both orientations:
    // row form sums over z in facet(x); transposed form over z with x in
    // facet(z).
    {
        auto& c = check("dudv-inverse");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Point &x = W[i], &y = W[j];
                LaurentPoly row_form, transposed_form;
                for (const Point& z : facet_points(Facet{W[i], waxis[i]}, r))
                    if (set.in_cone_with_axis(y, z, waxis[j]))
                        row_form += detail::q_power(l1_distance(x, z)) *
                                    detail::neg_q_power(l1_distance(y, z));
                for (int zi : ctx.cofacet[i]) {
                    const Point& z = ctx.region_pts[zi];
                    if (set.in_cone_with_axis(z, y, ctx.region_axis[zi]))
                        transposed_form += detail::q_power(l1_distance(z, x)) *
                                           detail::neg_q_power(l1_distance(z, y));
                }
                LaurentPoly expect(i == j ? 1 : 0);
                if (row_form != expect)
                    c.record(x, y, row_form.to_string(), expect.to_string());
                if (transposed_form != expect)
                    c.record(x, y, transposed_form.to_string(), expect.to_string());
            }
    }

    // (8) C_U(q) C_V(-q) = identity to the cutoff.
    {
        auto& c = check("cucv-inverse");
        TruncSeries geo = geometric_power(r, cutoff);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Point &x = W[i], &y = W[j];
                LaurentPoly::term_list acc;
                for (auto& [z, v] : ctx.cu_row[i]) {
                    if (l1_distance(x, z) > 2 * r) continue;
                    long long d = l1_distance(z, y);
                    for (auto& [e, co] : v.terms()) {
                        long long exp = e + d;
                        if (exp <= cutoff)
                            acc.emplace_back(static_cast<int>(exp),
                                             d % 2 == 0 ? co : -co);
                    }
                }
                TruncSeries lhs =
                    TruncSeries(LaurentPoly::from_terms(std::move(acc)), cutoff) * geo;
                TruncSeries rhs(LaurentPoly(i == j ? 1 : 0), cutoff);
                if (!lhs.equals(rhs)) c.record(x, y, lhs.to_string(), rhs.to_string());
            }
    }

    // (9) C_U(q^{-1}) = q^{2-2r} C_U(q), exactly.
    {
        auto& c = check("cu-q-symmetry");
        for (int i = 0; i < n; ++i)
            for (auto& [y, v] : ctx.cu_row[i]) {
                LaurentPoly lhs = v.substitute_inv_q();
                LaurentPoly rhs = v.shifted(2 - 2 * r);
                if (lhs != rhs) c.record(W[i], y, lhs.to_string(), rhs.to_string());
            }
    }

    // Rank 3 extra: Dist(q) * C_U(-q) = (1-q^2)^2 * I to the cutoff, using
    // the symmetry of C_U to read column sums from rows.
    if (r == 3) {
        auto& c = check("dist-loc-hexagon");
        LaurentPoly one_minus_q2 =
            LaurentPoly(1) - LaurentPoly::monomial(1, 2);
        LaurentPoly target = one_minus_q2 * one_minus_q2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Point& x = W[i];
                LaurentPoly sum;
                for (auto& [z, v] : ctx.cu_row[j])
                    sum += detail::q_power(l1_distance(x, z)) * v.substitute_neg_q();
                LaurentPoly expect = (i == j) ? target : LaurentPoly();
                if (truncate(sum, cutoff) != truncate(expect, cutoff))
                    c.record(x, W[j], sum.to_string(), expect.to_string());
            }
    }

    return report;
}

} // namespace cubist
