#pragma once

// Flip mutations X -> X' at maximal vertices, and the predicted effect of a
// flip on the graded Cartan matrix of U_X.

#include <sstream>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "point.hpp"
#include "qmatrix.hpp"
#include "set.hpp"

namespace cubist {

struct FlipDiagnostics {
    bool cube_filled = false;      // every x with z[-1] < x <= z lies in X
    bool maximal_in_ideal = false; // z + e_i outside the ideal for all i
    bool facet_count_is_rank = false;
    bool flippable = false;
};

/// Tests whether z is a flippable (maximal) vertex of X.  Three equivalent
/// conditions are evaluated and must agree: the filled half-open cube
/// below z, maximality of z in the ideal, and z lying in exactly r facets.
inline FlipDiagnostics flip_diagnostics(const CubistSet& set, const Point& z) {
    if (!set.contains(z))
        throw std::domain_error("flip_diagnostics: " + point_to_string(z) +
                                " is not in X");
    int r = set.rank();
    FlipDiagnostics d;

    d.cube_filled = true;
    Box cube(diag_shift(z, -1), z);
    cube.for_each([&](const Point& x) {
        if (x == diag_shift(z, -1)) return; // strict lower corner excluded
        if (!set.contains(x)) d.cube_filled = false;
    });

    d.maximal_in_ideal = true;
    for (int i = 1; i <= r; ++i)
        if (set.contains_ideal(step(z, i, +1))) d.maximal_in_ideal = false;

    // The simplex condition needs its orientation: a minimal vertex also
    // lies in exactly r facets, but as their common bottom corner.  Here z
    // must be the coordinatewise maximum of each facet through it.
    auto facets = set.facets_through(z);
    d.facet_count_is_rank = static_cast<int>(facets.size()) == r;
    for (const Facet& f : facets) {
        Point top = f.anchor;
        for (int j = 1; j < f.axis; ++j) top[j - 1] += 1;
        if (top != z) d.facet_count_is_rank = false;
    }

    if (d.cube_filled != d.maximal_in_ideal || d.cube_filled != d.facet_count_is_rank)
        throw std::logic_error("flip_diagnostics: equivalent conditions disagree at " +
                               point_to_string(z));
    d.flippable = d.cube_filled;
    return d;
}

inline bool is_flippable(const CubistSet& set, const Point& z) {
    return flip_diagnostics(set, z).flippable;
}

/// X' = X with z replaced by z[-1], realized as a removal-list append.
inline CubistSet flip(const CubistSet& set, const Point& z) {
    if (!is_flippable(set, z))
        throw std::domain_error("flip: " + point_to_string(z) + " is not flippable");
    return set.with_removal(z);
}

/// Undo of the most recent flip; rejected unless the last removal equals z.
inline CubistSet unflip(const CubistSet& set, const Point& z) {
    if (set.removals().empty() || set.removals().back() != z)
        throw std::domain_error("unflip: " + point_to_string(z) +
                                " is not the most recent removal");
    std::vector<Point> rs = set.removals();
    rs.pop_back();
    return CubistSet(set.rank(), set.base(), std::move(rs));
}

/// Predicted Cartan matrix after flipping at z: the entry (x,y) loses
/// q^{r-1}[r - d(z,x) - d(z,y)]_q when both x and y lie in the closed cube
/// [z[-1], z], and is unchanged otherwise.  Rows and columns are the window
/// points of X together with z[-1]; entries where an index is outside X
/// read C_U as zero.  The row and column of z come out identically zero.
inline PolyMatrix predicted_flip_cartan(const CubistSet& set, const Point& z,
                                        const Box& window) {
    if (!is_flippable(set, z))
        throw std::domain_error("predicted_flip_cartan: not flippable at " +
                                point_to_string(z));
    int r = set.rank();
    PolyMatrix m;
    m.rows = set.points_in_window(window);
    Point zdown = diag_shift(z, -1);
    if (m.row_index(zdown) < 0) {
        m.rows.push_back(zdown);
        std::sort(m.rows.begin(), m.rows.end());
    }
    m.cols = m.rows;
    auto in_cube = [&](const Point& x) {
        for (int i = 0; i < r; ++i)
            if (x[i] < z[i] - 1 || x[i] > z[i]) return false;
        return true;
    };
    std::vector<Point> members;
    for (const Point& x : m.rows)
        if (set.contains(x)) members.push_back(x);
    auto rows = c_u_rows(set, members);
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(m.cols.size()); ++j) {
            const Point &x = m.rows[i], &y = m.cols[j];
            LaurentPoly v;
            if (set.contains(x) && set.contains(y)) {
                auto it = rows[x].find(y);
                if (it != rows[x].end()) v = it->second;
            }
            if (in_cube(x) && in_cube(y)) {
                long long mdeg = r - l1_distance(z, x) - l1_distance(z, y);
                v -= LaurentPoly::monomial(1, r - 1) * quantum_integer(mdeg);
            }
            m.set(i, j, std::move(v));
        }
    return m;
}

struct FlipCheckFailure {
    Point x, y;
    std::string predicted, actual;
};

struct FlipCheckReport {
    Point z, z_down;
    bool pass = true;
    // the pre-flip column formula C(q)_{z,x} = q^{r-1}[r-d(z,x)]_q
    std::vector<FlipCheckFailure> column_formula_failures;
    // predicted row/column of z must vanish
    std::vector<Point> nonzero_z_entries;
    // predicted vs recomputed entries over the shared index set
    std::vector<FlipCheckFailure> entry_failures;
    long long entries_compared = 0;

    std::string summary() const {
        std::ostringstream os;
        os << "flip at " << point_to_string(z) << " -> " << point_to_string(z_down)
           << ": " << entries_compared << " entries compared, "
           << entry_failures.size() << " mismatches, "
           << column_formula_failures.size() << " column-formula failures"
           << (pass ? " [pass]" : " [FAIL]");
        return os.str();
    }
};

/// Flips at z, recomputes the Cartan matrix of the flipped set over the
/// window (reindexed from z to z[-1]), and compares it entrywise against
/// the prediction.
inline FlipCheckReport check_flip_cartan(const CubistSet& set, const Point& z,
                                         const Box& window) {
    int r = set.rank();
    FlipCheckReport rep;
    rep.z = z;
    rep.z_down = diag_shift(z, -1);

    PolyMatrix predicted = predicted_flip_cartan(set, z, window);

    // Pre-flip column formula at the flip vertex.
    for (const Point& x : predicted.rows) {
        if (!set.contains(x)) continue;
        LaurentPoly actual = c_u_entry(set, z, x);
        LaurentPoly expect;
        bool in_cube = true;
        for (int i = 0; i < r; ++i)
            if (x[i] < z[i] - 1 || x[i] > z[i]) in_cube = false;
        if (in_cube)
            expect = LaurentPoly::monomial(1, r - 1) *
                     quantum_integer(r - l1_distance(z, x));
        if (actual != expect) {
            rep.pass = false;
            rep.column_formula_failures.push_back(
                {z, x, expect.to_string(), actual.to_string()});
        }
    }

    CubistSet flipped = flip(set, z);
    std::vector<Point> members;
    for (const Point& x : predicted.rows)
        if (flipped.contains(x)) members.push_back(x);
    auto rows = c_u_rows(flipped, members);

    int zi = predicted.row_index(z);
    for (int i = 0; i < static_cast<int>(predicted.rows.size()); ++i) {
        const Point& x = predicted.rows[i];
        if (zi >= 0) {
            LaurentPoly row_entry = predicted.get(zi, i);
            LaurentPoly col_entry = predicted.get(i, zi);
            if (!row_entry.is_zero() || !col_entry.is_zero()) {
                rep.pass = false;
                rep.nonzero_z_entries.push_back(x);
            }
        }
        if (!flipped.contains(x)) continue;
        for (int j = 0; j < static_cast<int>(predicted.cols.size()); ++j) {
            const Point& y = predicted.cols[j];
            if (!flipped.contains(y)) continue;
            LaurentPoly actual;
            auto it = rows[x].find(y);
            if (it != rows[x].end()) actual = it->second;
            LaurentPoly want = predicted.get(i, j);
            ++rep.entries_compared;
            if (actual != want) {
                rep.pass = false;
                rep.entry_failures.push_back(
                    {x, y, want.to_string(), actual.to_string()});
            }
        }
    }
    return rep;
}

} // namespace cubist
