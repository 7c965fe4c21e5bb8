#pragma once

// Weight-2 symmetric-group block combinatorics: the bead abacus, cores and
// weights, runner-gap vectors, pyramids, shorthand labels, the lambda_B
// parametrization of simple modules, adjacent-runner-swap pairs with the
// label bijection Phi, and the map from a block to a rank-3 Cubist subset.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "point.hpp"
#include "qmatrix.hpp"
#include "set.hpp"

namespace cubist {

/// A partition: weakly decreasing positive parts.
struct Partition {
    std::vector<long long> parts;

    Partition() = default;
    explicit Partition(std::vector<long long> p) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0)
                throw std::invalid_argument("Partition: parts must be positive");
            if (i && parts[i] > parts[i - 1])
                throw std::invalid_argument("Partition: parts must be decreasing");
        }
    }

    long long size() const {
        long long s = 0;
        for (long long p : parts) s += p;
        return s;
    }

    /// No part value repeated p or more times.
    bool is_p_regular(int p) const {
        int run = 1;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            run = parts[i] == parts[i - 1] ? run + 1 : 1;
            if (run >= p) return false;
        }
        return parts.empty() ? true : run < p;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.parts == b.parts;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) os << ",";
            os << parts[i];
        }
        os << ")";
        return os.str();
    }
};

/// The bead abacus with p runners: position t sits on runner t mod p.
struct Abacus {
    int p = 2;
    long long bead_count = 0;
    std::set<long long> beads;
};

/// Beads at positions lambda_1 + N - 1, ..., lambda_N (missing parts read
/// as zero).
inline Abacus abacus_from_partition(const Partition& lambda, long long N, int p) {
    if (N < static_cast<long long>(lambda.parts.size()))
        throw std::invalid_argument("abacus_from_partition: N smaller than #parts");
    Abacus a;
    a.p = p;
    a.bead_count = N;
    for (long long i = 1; i <= N; ++i) {
        long long part =
            i <= static_cast<long long>(lambda.parts.size()) ? lambda.parts[i - 1] : 0;
        if (!a.beads.insert(part + N - i).second)
            throw std::logic_error("abacus_from_partition: duplicate bead");
    }
    return a;
}

inline Partition partition_from_abacus(const Abacus& a) {
    std::vector<long long> pos(a.beads.begin(), a.beads.end());
    std::vector<long long> parts;
    long long n = static_cast<long long>(pos.size());
    for (long long i = 0; i < n; ++i) {
        long long part = pos[n - 1 - i] - (n - 1 - i);
        if (part > 0) parts.push_back(part);
    }
    return Partition(std::move(parts));
}

/// Pushes every bead to the top of its runner; returns the core partition
/// and the weight (total number of one-step upward moves).
inline std::pair<Partition, long long> core_and_weight(const Abacus& a) {
    Abacus pushed;
    pushed.p = a.p;
    pushed.bead_count = a.bead_count;
    std::vector<long long> per_runner(a.p, 0);
    long long weight = 0;
    for (long long b : a.beads) {
        int runner = static_cast<int>(b % a.p);
        // gaps above this bead = everything above minus beads above
        long long above = b / a.p;
        long long beads_above = 0;
        for (long long c : a.beads)
            if (c < b && c % a.p == runner) ++beads_above;
        weight += above - beads_above;
        ++per_runner[runner];
    }
    for (int runner = 0; runner < a.p; ++runner)
        for (long long k = 0; k < per_runner[runner]; ++k)
            pushed.beads.insert(runner + k * a.p);
    return {partition_from_abacus(pushed), weight};
}

/// First unoccupied position on each runner, sorted increasingly.  Only
/// defined for the abacus of a core.
inline std::vector<long long> runner_gaps(const Abacus& a) {
    auto [core, weight] = core_and_weight(a);
    if (weight != 0)
        throw std::invalid_argument("runner_gaps: abacus is not a core (weight " +
                                    std::to_string(weight) + ")");
    std::vector<long long> q;
    for (int runner = 0; runner < a.p; ++runner) {
        long long pos = runner;
        while (a.beads.count(pos)) pos += a.p;
        q.push_back(pos);
    }
    std::sort(q.begin(), q.end());
    return q;
}

/// Tagged shorthand label for a weight-2 partition: <u,v> with u<v, <u>, or
/// <u,u>.
struct ShortLabel {
    enum class Kind { Pair, Single, DoubledPair };
    Kind kind;
    int u = 0, v = 0;

    static ShortLabel pair(int u, int v) {
        if (u > v) std::swap(u, v);
        if (u == v) return doubled(u);
        return {Kind::Pair, u, v};
    }
    static ShortLabel single(int u) { return {Kind::Single, u, u}; }
    static ShortLabel doubled(int u) { return {Kind::DoubledPair, u, u}; }

    friend bool operator==(const ShortLabel& a, const ShortLabel& b) {
        return a.kind == b.kind && a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const ShortLabel& a, const ShortLabel& b) {
        return std::tie(a.kind, a.u, a.v) < std::tie(b.kind, b.u, b.v);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "<" << u;
        if (kind == Kind::Pair) os << "," << v;
        if (kind == Kind::DoubledPair) os << "," << u;
        os << ">";
        return os.str();
    }
};

/// A weight-2 block: odd prime p, a p-core, its abacus at a normalized bead
/// count, the sorted gap vector and the pyramid.
struct BlockDescriptor {
    int p = 3;
    long long N = 0;
    Partition core;
    Abacus core_abacus;
    std::vector<long long> q;
    std::set<std::pair<int, int>> pyramid;

    /// (u,v) lies in S_B: within range, not (0,0), and q_v - q_u < p.
    bool in_sset(int u, int v) const {
        if (u < 0 || v < u || v > p - 1) return false;
        if (u == 0 && v == 0) return false;
        return q[v] - q[u] < p;
    }
};

/// Builds the descriptor.  The bead count defaults to the smallest positive
/// multiple of p that is >= the number of parts; the gap values depend on
/// that convention, the pyramid does not.
inline BlockDescriptor make_block(int p, const Partition& core, long long N = -1) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("make_block: p must be an odd prime");
    if (N < 0) {
        N = p;
        while (N < static_cast<long long>(core.parts.size())) N += p;
    }
    BlockDescriptor b;
    b.p = p;
    b.N = N;
    b.core = core;
    b.core_abacus = abacus_from_partition(core, N, p);
    auto [pushed, weight] = core_and_weight(b.core_abacus);
    if (weight != 0)
        throw std::invalid_argument("make_block: " + core.to_string() +
                                    " is not a " + std::to_string(p) + "-core");
    b.q = runner_gaps(b.core_abacus);
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v)
            if (b.q[v] - b.q[u] < p) b.pyramid.insert({u, v});
    // closure cannot fail for a genuine core, since the gaps increase
    for (auto& [u, v] : b.pyramid)
        for (int w = u + 1; w < v; ++w)
            if (!b.pyramid.count({u, w}) || !b.pyramid.count({w, v}))
                throw std::logic_error("make_block: pyramid closure violated");
    return b;
}

/// Rebuilds the core from a strictly increasing gap vector (pairwise
/// incongruent mod p): runner of q_u holds beads at q_u - p, q_u - 2p, ...
inline BlockDescriptor make_block_from_gaps(int p, const std::vector<long long>& q) {
    if (static_cast<int>(q.size()) != p)
        throw std::invalid_argument("make_block_from_gaps: need exactly p gaps");
    Abacus a;
    a.p = p;
    for (int u = 0; u < p; ++u) {
        if (u && q[u] <= q[u - 1])
            throw std::invalid_argument("make_block_from_gaps: gaps must increase");
        for (int w = 0; w < u; ++w)
            if ((q[u] - q[w]) % p == 0)
                throw std::invalid_argument(
                    "make_block_from_gaps: gaps congruent mod p");
        for (long long pos = q[u] - p; pos >= 0; pos -= p) a.beads.insert(pos);
    }
    a.bead_count = static_cast<long long>(a.beads.size());
    return make_block(p, partition_from_abacus(a), a.bead_count);
}

namespace blocks_detail {

/// Abacus of the core with every gap at least `floor`, obtained by adding
/// whole rows of beads; the represented partition is unchanged.
inline Abacus lifted_core_abacus(const BlockDescriptor& b, long long floor_gap) {
    long long lift = 0;
    while (b.q.front() + lift < floor_gap) lift += b.p;
    Abacus a;
    a.p = b.p;
    a.bead_count = b.N + lift;
    for (long long t = 0; t < lift; ++t) a.beads.insert(t);
    for (long long bead : b.core_abacus.beads) a.beads.insert(bead + lift);
    return a;
}

inline void move_bead(Abacus& a, long long from, long long to) {
    if (!a.beads.erase(from))
        throw std::logic_error("move_bead: no bead at " + std::to_string(from));
    if (!a.beads.insert(to).second)
        throw std::logic_error("move_bead: position " + std::to_string(to) +
                               " occupied");
}

} // namespace blocks_detail

/// The weight-2 partition named by a shorthand label: bead moves on the
/// core abacus relative to the gap vector.
inline Partition label_partition(const BlockDescriptor& b, const ShortLabel& label) {
    using blocks_detail::move_bead;
    if (label.u < 0 || label.u > b.p - 1 || label.v < 0 || label.v > b.p - 1)
        throw std::invalid_argument("label_partition: label index out of range");
    Abacus a = blocks_detail::lifted_core_abacus(b, 2ll * b.p);
    long long lift = a.bead_count - b.N;
    long long qu = b.q[label.u] + lift;
    long long qv = b.q[label.v] + lift;
    switch (label.kind) {
    case ShortLabel::Kind::Pair:
        move_bead(a, qu - b.p, qu);
        move_bead(a, qv - b.p, qv);
        break;
    case ShortLabel::Kind::Single:
        move_bead(a, qu - b.p, qu + b.p);
        break;
    case ShortLabel::Kind::DoubledPair:
        move_bead(a, qu - b.p, qu);
        move_bead(a, qu - 2ll * b.p, qu - b.p);
        break;
    }
    return partition_from_abacus(a);
}

/// The four-case parametrization of simple modules by pairs
/// (u,v) with 0 <= u <= v <= p-1, (u,v) != (0,0).
inline ShortLabel lambda_b(const BlockDescriptor& b, int u, int v) {
    if (!(0 <= u && u <= v && v <= b.p - 1) || (u == 0 && v == 0))
        throw std::invalid_argument("lambda_b: pair outside the index set");
    bool uv = b.in_sset(u, v);
    if (!uv && !b.in_sset(u + 1, v)) return ShortLabel::pair(u + 1, v);
    if (!uv) return ShortLabel::doubled(v);
    if (b.in_sset(u, v + 1)) return ShortLabel::pair(u, v + 1);
    return ShortLabel::single(u);
}

/// All pairs of label points (u,v) in S, row-major.
inline std::vector<std::pair<int, int>> sset_pairs(const BlockDescriptor& b) {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u <= b.p - 1; ++u)
        for (int v = u; v <= b.p - 1; ++v)
            if (!(u == 0 && v == 0)) out.push_back({u, v});
    return out;
}

struct ScopesPair {
    int s = 0, t = 0;
    long long m = 0;
};

/// All index pairs s < t with q_t - q_s = m*p + 1 for some m > 0.
inline std::vector<ScopesPair> scopes_pairs(const BlockDescriptor& b) {
    std::vector<ScopesPair> out;
    for (int s = 0; s < b.p; ++s)
        for (int t = s + 1; t < b.p; ++t) {
            long long diff = b.q[t] - b.q[s];
            if (diff > 1 && diff % b.p == 1) out.push_back({s, t, diff / b.p});
        }
    return out;
}

/// The companion block: beads at q_t - p, ..., q_t - mp move one position
/// left, producing another core.
inline BlockDescriptor scopes_companion(const BlockDescriptor& b, const ScopesPair& sp) {
    Abacus a = blocks_detail::lifted_core_abacus(b, sp.m * b.p + 1);
    long long lift = a.bead_count - b.N;
    long long qt = b.q[sp.t] + lift;
    for (long long k = 1; k <= sp.m; ++k)
        blocks_detail::move_bead(a, qt - k * b.p, qt - k * b.p - 1);
    auto [core, weight] = core_and_weight(a);
    if (weight != 0)
        throw std::logic_error("scopes_companion: companion is not a core");
    return make_block(b.p, core);
}

/// The label bijection for a [2:m] pair: the identity on shorthand labels
/// except for a 3-cycle when m = 1.
inline ShortLabel phi(const ScopesPair& sp, const ShortLabel& label) {
    if (sp.m >= 2) return label;
    if (label == ShortLabel::doubled(sp.t)) return ShortLabel::single(sp.s);
    if (label == ShortLabel::pair(sp.s, sp.t)) return ShortLabel::doubled(sp.t);
    if (label == ShortLabel::single(sp.s)) return ShortLabel::pair(sp.s, sp.t);
    return label;
}

/// The vertex of Z^3 attached to an index pair u < v (any integers):
/// (-u-1, v, 0) off the pyramid and (-u, 1+v, 1) on it.
inline Point block_vertex(const BlockDescriptor& b, int u, int v) {
    if (u >= v) throw std::invalid_argument("block_vertex: need u < v");
    if (b.pyramid.count({u, v})) return Point{-u, 1 + v, 1};
    return Point{-u - 1, v, 0};
}

/// The Cubist subset of Z^3 attached to the block.
inline CubistSet cubist_from_block(const BlockDescriptor& b) {
    return CubistSet(3, Weight2Base{b.p, b.pyramid});
}

/// Rows/columns are the block vertices of the strict pairs 0 <= u < v <= p-1
/// in row-major order; entries are exact Cartan entries of the block's
/// Cubist algebra.
inline PolyMatrix block_truncated_cartan(const BlockDescriptor& b) {
    CubistSet set = cubist_from_block(b);
    PolyMatrix m;
    std::vector<Point> pts;
    for (int u = 0; u <= b.p - 1; ++u)
        for (int v = u + 1; v <= b.p - 1; ++v)
            pts.push_back(block_vertex(b, u, v));
    m.rows = m.cols = pts;
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto rows = c_u_rows(set, sorted);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
            auto it = rows[pts[i]].find(pts[j]);
            if (it != rows[pts[i]].end()) m.set(i, j, it->second);
        }
    return m;
}

} // namespace cubist
