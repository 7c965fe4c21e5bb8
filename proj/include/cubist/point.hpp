#pragma once

// Lattice points of Z^r and finite boxes.  Points are plain int vectors,
// compared lexicographically; axes are 1-based throughout the library to
// match the usual coordinate formulas.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubist {

using Point = std::vector<int>;

inline void require_rank(const Point& x, int rank, const char* what) {
    if (static_cast<int>(x.size()) != rank)
        throw std::invalid_argument(std::string(what) + ": point has rank " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(rank));
}

/// L1 distance; equals the graph distance inside any Cubist subset.
inline long long l1_distance(const Point& x, const Point& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("l1_distance: rank mismatch");
    long long d = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d += x[i] >= y[i] ? static_cast<long long>(x[i]) - y[i]
                          : static_cast<long long>(y[i]) - x[i];
    return d;
}

/// x[zeta] = x + zeta*(1,...,1).
inline Point diag_shift(const Point& x, int zeta) {
    Point r = x;
    for (int& c : r) c += zeta;
    return r;
}

/// x + sign * e_axis, axis in 1..r.
inline Point step(const Point& x, int axis, int sign) {
    Point r = x;
    r[axis - 1] += sign;
    return r;
}

inline std::string point_to_string(const Point& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ",";
        os << x[i];
    }
    os << ")";
    return os.str();
}

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int c : p) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// A finite axis-aligned box [lo, hi] (inclusive); empty when some
/// coordinate has lo > hi.
struct Box {
    Point lo, hi;

    Box() = default;
    Box(Point lo_, Point hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size())
            throw std::invalid_argument("Box: rank mismatch");
    }

    bool empty() const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i]) return true;
        return lo.empty();
    }

    static Box cube(int rank, int radius, const Point* center = nullptr) {
        Point lo(rank), hi(rank);
        for (int i = 0; i < rank; ++i) {
            int c = center ? (*center)[i] : 0;
            lo[i] = c - radius;
            hi[i] = c + radius;
        }
        return Box(std::move(lo), std::move(hi));
    }

    int rank() const { return static_cast<int>(lo.size()); }

    bool contains(const Point& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }

    Box inflated(int margin) const {
        Box b = *this;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            b.lo[i] -= margin;
            b.hi[i] += margin;
        }
        return b;
    }

    long long volume() const {
        if (empty()) return 0;
        long long v = 1;
        for (std::size_t i = 0; i < lo.size(); ++i)
            v *= static_cast<long long>(hi[i]) - lo[i] + 1;
        return v;
    }

    /// Visit all points in lexicographic order.
    template <typename F>
    void for_each(F&& f) const {
        if (empty()) return;
        Point cur = lo;
        while (true) {
            f(cur);
            int i = rank() - 1;
            while (i >= 0 && cur[i] == hi[i]) {
                cur[i] = lo[i];
                --i;
            }
            if (i < 0) return;
            ++cur[i];
        }
    }

    std::string to_string() const {
        std::ostringstream os;
        os << point_to_string(lo) << ".." << point_to_string(hi);
        return os.str();
    }
};

/// Bounding box of two points.
inline Box bounding_box(const Point& x, const Point& y) {
    Point lo(x.size()), hi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        lo[i] = std::min(x[i], y[i]);
        hi[i] = std::max(x[i], y[i]);
    }
    return Box(std::move(lo), std::move(hi));
}

} // namespace cubist
