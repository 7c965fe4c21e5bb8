#pragma once

#include <cubist/blocks.hpp>
#include <cubist/set.hpp>

#include <random>

namespace cubist::testutil {

inline CubistSet make_corner(int rank) {
    return CubistSet(rank, CornerBase{Point(rank, 0)});
}

inline CubistSet make_flat(int rank, int axis = -1) {
    if (axis < 0) axis = (rank + 1) / 2;
    return CubistSet(rank, FlatBase{axis, 0});
}

inline CubistSet weight2_empty(int p = 5) {
    return CubistSet(3, Weight2Base{p, {}});
}

/// The pyramid of the p = 7 block with gap vector (0,5,6,8,9,17,25).
inline CubistSet weight2_example7() {
    std::set<std::pair<int, int>> pyr{{0, 1}, {0, 2}, {1, 2}, {1, 3},
                                      {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    return CubistSet(3, Weight2Base{7, pyr});
}

/// Appends `count` random legal removals drawn from the maximal ideal
/// elements inside the box.
inline CubistSet add_random_removals(CubistSet set, int count, std::mt19937_64& rng,
                                     int radius = 5) {
    for (int k = 0; k < count; ++k) {
        Box box = Box::cube(set.rank(), radius);
        auto candidates = set.removable_points(box);
        if (candidates.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        set = set.with_removal(candidates[pick(rng)]);
    }
    return set;
}

} // namespace cubist::testutil
