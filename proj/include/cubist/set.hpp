#pragma once

// Finite, globally exact representations of infinite Cubist subsets of Z^r.
//
// A Cubist subset is X = X^- \ X^-[-1] for a nonempty proper ideal X^- of
// (Z^r, <=).  We represent X^- as a base ideal minus an ordered list of
// removed points, each of which must be maximal in the ideal at its turn.
// Membership is exact at every point of Z^r, with no approximation region.

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "point.hpp"

namespace cubist {

/// Half-space ideal { x : x_axis <= level }.
struct FlatBase {
    int axis = 1; // 1..r
    int level = 0;
};

/// Ideal anchor + Z^r_{<=0}, i.e. { x : x <= anchor }.
struct CornerBase {
    Point anchor;
};

/// The rank-3 ideal attached to a weight-2 block pyramid:
///   { (i,j,k) : k <= 0 }  u  { (i,j,1) : i+j <= 1 or (-i, j-1) in pyramid }.
/// The pyramid must satisfy the closure property: (u,v) present and u<w<v
/// imply (u,w) and (w,v) present.
struct Weight2Base {
    int p = 3;
    std::set<std::pair<int, int>> pyramid;
};

using BaseIdeal = std::variant<FlatBase, CornerBase, Weight2Base>;

/// The (r-1)-cube anchor + F_axis, where
///   F_i = { sum_{j<i} a_j e_j - sum_{j>i} a_j e_j : a_j in {0,1} }.
struct Facet {
    Point anchor;
    int axis = 1; // 1..r

    friend bool operator==(const Facet& a, const Facet& b) {
        return a.axis == b.axis && a.anchor == b.anchor;
    }
    friend bool operator<(const Facet& a, const Facet& b) {
        if (a.axis != b.axis) return a.axis < b.axis;
        return a.anchor < b.anchor;
    }
};

/// Axis permutation describing one of the r! conjugate facet assignments;
/// perm[k] is the axis playing role k+1.  Identity gives the standard one.
using AxisPerm = std::vector<int>;

inline AxisPerm identity_perm(int rank) {
    AxisPerm p(rank);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

struct ValidationResult {
    bool ok = true;
    int index = -1;
    std::string reason;
};

enum class OrderResult {
    True,              // a descending chain was found
    NotFoundWithinBox, // box-relative negative, not a definitive one
};

class CubistSet {
public:
    CubistSet(int rank, BaseIdeal base, std::vector<Point> removals = {})
        : rank_(rank), base_(std::move(base)), removals_(std::move(removals)) {
        if (rank_ < 1) throw std::invalid_argument("CubistSet: rank must be >= 1");
        check_base_shape();
        for (const Point& y : removals_) {
            require_rank(y, rank_, "CubistSet removal");
            removal_set_.insert(y);
        }
    }

    int rank() const { return rank_; }
    const BaseIdeal& base() const { return base_; }
    const std::vector<Point>& removals() const { return removals_; }

    bool base_contains(const Point& y) const {
        require_rank(y, rank_, "base_contains");
        if (const auto* f = std::get_if<FlatBase>(&base_))
            return y[f->axis - 1] <= f->level;
        if (const auto* c = std::get_if<CornerBase>(&base_)) {
            for (int i = 0; i < rank_; ++i)
                if (y[i] > c->anchor[i]) return false;
            return true;
        }
        const auto& w = std::get<Weight2Base>(base_);
        int k = y[2];
        if (k <= 0) return true;
        if (k >= 2) return false;
        if (y[0] + y[1] <= 1) return true;
        return w.pyramid.count({-y[0], y[1] - 1}) != 0;
    }

    /// Membership in the ideal X^- (base minus removals).
    bool contains_ideal(const Point& y) const {
        return base_contains(y) && removal_set_.find(y) == removal_set_.end();
    }

    /// Membership in X = X^- \ X^-[-1].
    bool contains(const Point& y) const {
        return contains_ideal(y) && !contains_ideal(diag_shift(y, 1));
    }

    /// Checks that every removal, at its turn, is maximal in the ideal
    /// obtained by applying all earlier removals.  A Flat base admits no
    /// removals at all (a half space has no maximal elements), which this
    /// check detects without a special case.
    ValidationResult validate() const {
        std::set<Point> removed;
        for (std::size_t k = 0; k < removals_.size(); ++k) {
            const Point& y = removals_[k];
            auto in_current = [&](const Point& z) {
                return base_contains(z) && removed.find(z) == removed.end();
            };
            if (!in_current(y))
                return {false, static_cast<int>(k),
                        point_to_string(y) + " is not in the current ideal"};
            for (int i = 1; i <= rank_; ++i) {
                Point up = step(y, i, +1);
                if (in_current(up))
                    return {false, static_cast<int>(k),
                            point_to_string(y) + " is not maximal: " +
                                point_to_string(up) + " is still in the ideal"};
            }
            removed.insert(y);
        }
        return {};
    }

    CubistSet with_removal(const Point& y) const {
        std::vector<Point> rs = removals_;
        rs.push_back(y);
        return CubistSet(rank_, base_, std::move(rs));
    }

    // -- facet bijection ----------------------------------------------------

    /// Axis i of the unique facet lambda(x) = x + F_i contained in X:
    /// i = max{ j : x + e_1 + ... + e_{j-1} in X }.
    int facet_axis(const Point& x) const { return facet_axis(x, nullptr); }

    int facet_axis(const Point& x, const AxisPerm* perm) const {
        if (!contains(x))
            throw std::domain_error("facet_axis: " + point_to_string(x) + " is not in X");
        int best = 1;
        Point cur = x;
        for (int j = 2; j <= rank_; ++j) {
            cur[axis_at(perm, j - 1) - 1] += 1;
            if (contains(cur)) best = j;
        }
        return axis_at(perm, best);
    }

    Facet facet_of(const Point& x) const { return Facet{x, facet_axis(x)}; }

    Facet facet_of(const Point& x, const AxisPerm* perm) const {
        return Facet{x, facet_axis(x, perm)};
    }

    // -- cone membership ----------------------------------------------------

    /// True iff y lies in mu(base) = base + C_i, the cone opposite the facet
    /// of `base`: coordinates before the facet axis <= 0, after it >= 0.
    bool in_cone(const Point& base, const Point& y) const {
        return in_cone(base, y, nullptr);
    }

    bool in_cone(const Point& base, const Point& y, const AxisPerm* perm) const {
        require_rank(y, rank_, "in_cone");
        int axis = facet_axis(base, perm);
        return in_cone_with_axis(base, y, axis, perm);
    }

    bool in_cone_with_axis(const Point& base, const Point& y, int axis,
                           const AxisPerm* perm = nullptr) const {
        int pos = role_of(perm, axis);
        for (int k = 1; k <= rank_; ++k) {
            if (k == pos) continue;
            int a = axis_at(perm, k);
            int d = y[a - 1] - base[a - 1];
            if (k < pos ? d > 0 : d < 0) return false;
        }
        return true;
    }

    // -- local structure ----------------------------------------------------

    /// Least axis i with both x + e_i and x - e_i outside X, if any.
    std::optional<int> flat_axis(const Point& x) const {
        if (!contains(x))
            throw std::domain_error("flat_axis: " + point_to_string(x) + " is not in X");
        for (int i = 1; i <= rank_; ++i)
            if (!contains(step(x, i, +1)) && !contains(step(x, i, -1)))
                return i;
        return std::nullopt;
    }

    bool is_crooked(const Point& x) const { return !flat_axis(x).has_value(); }

    /// I_X(x) = { z in X : x <= z <= x[1] }, in lexicographic order.
    std::vector<Point> interval_points(const Point& x) const {
        if (!contains(x))
            throw std::domain_error("interval_points: " + point_to_string(x) +
                                    " is not in X");
        std::vector<Point> out;
        Box box(x, diag_shift(x, 1));
        box.for_each([&](const Point& z) {
            if (contains(z)) out.push_back(z);
        });
        return out;
    }

    /// All facets of X through x.  A facet with sign pattern (S, i) lies in
    /// X iff x + sum_{j in S} e_j is in X and x + sum_{j in S u {i}} e_j is
    /// not.
    std::vector<Facet> facets_through(const Point& x) const {
        if (!contains(x))
            throw std::domain_error("facets_through: " + point_to_string(x) +
                                    " is not in X");
        std::vector<Facet> out;
        for (int i = 1; i <= rank_; ++i) {
            int others = rank_ - 1;
            for (unsigned mask = 0; mask < (1u << others); ++mask) {
                // bits of mask pick S among axes != i, ascending
                Point top = x;
                int bit = 0;
                bool in_s[32] = {};
                for (int j = 1; j <= rank_; ++j) {
                    if (j == i) continue;
                    if (mask >> bit & 1u) {
                        top[j - 1] += 1;
                        in_s[j] = true;
                    }
                    ++bit;
                }
                if (!contains(top)) continue;
                Point top_i = step(top, i, +1);
                if (contains(top_i)) continue;
                Point anchor = x;
                for (int j = 1; j <= rank_; ++j) {
                    if (j == i) continue;
                    if (j < i && !in_s[j]) anchor[j - 1] -= 1;
                    if (j > i && in_s[j]) anchor[j - 1] += 1;
                }
                out.push_back(Facet{std::move(anchor), i});
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// x's opposite vertex in its facet.
    Point opposite(const Point& x) const {
        int i = facet_axis(x);
        Point r = x;
        for (int j = 1; j <= rank_; ++j) {
            if (j < i) r[j - 1] += 1;
            if (j > i) r[j - 1] -= 1;
        }
        return r;
    }

    /// All points of X in the box, lexicographically.
    std::vector<Point> points_in_window(const Box& box) const {
        if (box.rank() != rank_)
            throw std::invalid_argument("points_in_window: box rank mismatch");
        std::vector<Point> out;
        box.for_each([&](const Point& y) {
            if (contains(y)) out.push_back(y);
        });
        return out;
    }

    /// Maximal elements of the current ideal inside the box; exactly the
    /// points that can legally be removed (or flipped) next.
    std::vector<Point> removable_points(const Box& box) const {
        std::vector<Point> out;
        box.for_each([&](const Point& y) {
            if (!contains_ideal(y)) return;
            for (int i = 1; i <= rank_; ++i)
                if (contains_ideal(step(y, i, +1))) return;
            out.push_back(y);
        });
        return out;
    }

    // -- partial order ------------------------------------------------------

    /// Default search box: bounding box of {x,y} inflated by 2r*(d(x,y)+1).
    Box default_order_box(const Point& x, const Point& y) const {
        long long d = l1_distance(x, y);
        int margin = static_cast<int>(2 * rank_ * (d + 1));
        return bounding_box(x, y).inflated(margin);
    }

    /// Reachability for the partial order generated by x >= y for y in the
    /// facet of x.  A True result is definitive; a negative only means no
    /// chain was found inside the search box.
    OrderResult order_geq(const Point& x, const Point& y) const {
        Box box = default_order_box(x, y);
        return order_geq(x, y, box);
    }

    OrderResult order_geq(const Point& x, const Point& y, const Box& box,
                          const AxisPerm* perm = nullptr) const {
        if (!contains(x))
            throw std::domain_error("order_geq: " + point_to_string(x) + " is not in X");
        if (!contains(y))
            throw std::domain_error("order_geq: " + point_to_string(y) + " is not in X");
        if (x == y) return OrderResult::True;
        if (!box.contains(x) || !box.contains(y)) return OrderResult::NotFoundWithinBox;
        std::set<Point> seen{x};
        std::deque<Point> queue{x};
        while (!queue.empty()) {
            Point cur = queue.front();
            queue.pop_front();
            for (const Point& nxt : facet_points_of(cur, perm)) {
                if (nxt == cur || !box.contains(nxt)) continue;
                if (nxt == y) return OrderResult::True;
                if (seen.insert(nxt).second) queue.push_back(nxt);
            }
        }
        return OrderResult::NotFoundWithinBox;
    }

    std::vector<Point> facet_points_of(const Point& x, const AxisPerm* perm = nullptr) const;

private:
    void check_base_shape() const {
        if (const auto* f = std::get_if<FlatBase>(&base_)) {
            if (f->axis < 1 || f->axis > rank_)
                throw std::invalid_argument("FlatBase: axis out of range");
        } else if (const auto* c = std::get_if<CornerBase>(&base_)) {
            require_rank(c->anchor, rank_, "CornerBase anchor");
        } else {
            const auto& w = std::get<Weight2Base>(base_);
            if (rank_ != 3)
                throw std::invalid_argument("Weight2Base requires rank 3");
            for (auto& [u, v] : w.pyramid) {
                if (!(0 <= u && u < v && v <= w.p - 1))
                    throw std::invalid_argument("Weight2Base: pyramid pair out of range");
                for (int m = u + 1; m < v; ++m)
                    if (!w.pyramid.count({u, m}) || !w.pyramid.count({m, v}))
                        throw std::invalid_argument(
                            "Weight2Base: pyramid violates the closure property");
            }
        }
    }

    static int axis_at(const AxisPerm* perm, int role) {
        return perm ? (*perm)[role - 1] : role;
    }

    static int role_of(const AxisPerm* perm, int axis) {
        if (!perm) return axis;
        for (std::size_t k = 0; k < perm->size(); ++k)
            if ((*perm)[k] == axis) return static_cast<int>(k) + 1;
        throw std::invalid_argument("AxisPerm: axis missing");
    }

    int rank_;
    BaseIdeal base_;
    std::vector<Point> removals_;
    std::set<Point> removal_set_;
};

/// The 2^(r-1) member points of a facet, in lexicographic order of the
/// {0,1}-vector indexing them.
inline std::vector<Point> facet_points(const Facet& f, int rank) {
    if (f.axis < 1 || f.axis > rank)
        throw std::invalid_argument("facet_points: axis out of range");
    int others = rank - 1;
    std::vector<Point> out;
    out.reserve(1u << others);
    for (unsigned mask = 0; mask < (1u << others); ++mask) {
        Point p = f.anchor;
        int bit = 0;
        for (int j = 1; j <= rank; ++j) {
            if (j == f.axis) continue;
            if (mask >> (others - 1 - bit) & 1u) p[j - 1] += (j < f.axis) ? 1 : -1;
            ++bit;
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Facet points under an axis permutation: roles k < pos(i) contribute
/// +e_{perm(k)}, roles k > pos(i) contribute -e_{perm(k)}.
inline std::vector<Point> CubistSet::facet_points_of(const Point& x,
                                                     const AxisPerm* perm) const {
    if (!perm) return facet_points(facet_of(x), rank_);
    int axis = facet_axis(x, perm);
    int pos = role_of(perm, axis);
    int others = rank_ - 1;
    std::vector<Point> out;
    out.reserve(1u << others);
    for (unsigned mask = 0; mask < (1u << others); ++mask) {
        Point p = x;
        int bit = 0;
        for (int k = 1; k <= rank_; ++k) {
            if (k == pos) continue;
            int a = (*perm)[k - 1];
            if (mask >> (others - 1 - bit) & 1u) p[a - 1] += (k < pos) ? 1 : -1;
            ++bit;
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Builds a corner-with-removals representation that agrees with an
/// arbitrary membership predicate on the radius-N box around `center`.
/// The ideal is generated by the member points in that box together with
/// the r arm points center[N] - 2N*e_i; everything below center[N] but
/// outside that generated ideal is a finite set, removed maximal-first.
template <typename MembershipFn>
CubistSet corner_approximation(int rank, MembershipFn&& member, const Point& center,
                               int radius) {
    Point top = diag_shift(center, radius);
    std::vector<Point> generators;
    Box window = Box::cube(rank, radius, &center);
    window.for_each([&](const Point& y) {
        if (member(y)) generators.push_back(y);
    });
    if (generators.empty())
        throw std::invalid_argument("corner_approximation: no member points in window");
    for (int i = 1; i <= rank; ++i) {
        Point arm = top;
        arm[i - 1] -= 2 * radius;
        generators.push_back(std::move(arm));
    }
    auto below_some_generator = [&](const Point& y) {
        for (const Point& g : generators) {
            bool le = true;
            for (int i = 0; i < rank; ++i)
                if (y[i] > g[i]) { le = false; break; }
            if (le) return true;
        }
        return false;
    };
    // The difference corner-ideal \ generated-ideal lives in the half-open
    // box (center - N, center + N].
    std::vector<Point> difference;
    Box scan(diag_shift(center, -radius + 1), top);
    scan.for_each([&](const Point& y) {
        if (!below_some_generator(y)) difference.push_back(y);
    });
    std::sort(difference.begin(), difference.end(), [](const Point& a, const Point& b) {
        long long sa = std::accumulate(a.begin(), a.end(), 0ll);
        long long sb = std::accumulate(b.begin(), b.end(), 0ll);
        if (sa != sb) return sa > sb;
        return a > b;
    });
    return CubistSet(rank, CornerBase{top}, std::move(difference));
}

} // namespace cubist
