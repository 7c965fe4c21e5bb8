#include <catch2/catch_amalgamated.hpp>

#include <cubist/render.hpp>

#include <cmath>
#include <set>

#include "test_util.hpp"

using namespace cubist;
using namespace cubist::testutil;

TEST_CASE("projection convention") {
    CHECK(project_point({0, 0, 0}, 3) == std::array<double, 2>{0.0, 0.0});
    CHECK(project_point({1, 1, 1}, 3) == std::array<double, 2>{0.0, 0.0});

    auto e1 = project_point({1, 0, 0}, 3);
    auto e2 = project_point({0, 1, 0}, 3);
    auto e3 = project_point({0, 0, 1}, 3);
    // unit vectors at 90, 210, 330 degrees
    CHECK_THAT(e1[0], Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(e1[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(e2[0], Catch::Matchers::WithinAbs(-std::sqrt(3.0) / 2, 1e-12));
    CHECK_THAT(e2[1], Catch::Matchers::WithinAbs(-0.5, 1e-12));
    CHECK_THAT(e3[0], Catch::Matchers::WithinAbs(std::sqrt(3.0) / 2, 1e-12));
    CHECK_THAT(e3[1], Catch::Matchers::WithinAbs(-0.5, 1e-12));

    // e1 - e2 has length sqrt(3)
    double dx = e1[0] - e2[0], dy = e1[1] - e2[1];
    CHECK_THAT(std::hypot(dx, dy), Catch::Matchers::WithinAbs(std::sqrt(3.0), 1e-12));

    CHECK(project_point({2, 2}, 2) == std::array<double, 2>{0.0, 0.0});
    CHECK_THROWS_AS(project_point({0, 0, 0, 0}, 4), std::invalid_argument);
}

TEST_CASE("projection is injective on window points") {
    for (const CubistSet& set :
         {make_corner(3), weight2_example7(), make_flat(3, 2)}) {
        std::set<std::pair<long long, long long>> seen;
        for (const Point& x : set.points_in_window(Box::cube(3, 4))) {
            auto p = project_point(x, 3);
            auto key = std::make_pair(std::llround(p[0] * 1e6),
                                      std::llround(p[1] * 1e6));
            CHECK(seen.insert(key).second);
        }
    }
}

TEST_CASE("svg output") {
    CubistSet flat = make_flat(3, 2);
    std::string svg = svg_tiling(flat, Box::cube(3, 3));
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    // deterministic
    CHECK(svg == svg_tiling(flat, Box::cube(3, 3)));

    // empty window still yields a valid document
    CubistSet corner = make_corner(3);
    Box far({5, 5, 5}, {6, 6, 6});
    std::string empty = svg_tiling(corner, far);
    CHECK(empty.find("<svg") == 0);
    CHECK(empty.find("<polygon") == std::string::npos);

    // rank 2 draws line segments
    std::string line = svg_tiling(make_flat(2, 2), Box::cube(2, 3));
    CHECK(line.find("<line") != std::string::npos);

    // highlight markers
    Highlights h;
    h.squares = {{0, 0, 0}};
    h.ring_flippable = true;
    std::string marked = svg_tiling(corner, Box::cube(3, 2), h);
    CHECK(marked.find("<rect") != std::string::npos);
    CHECK(marked.find("stroke=\"#b02020\"") != std::string::npos);
}

TEST_CASE("facets tile the plane without overlap") {
    // every interior sample point must be covered by exactly one rhombus
    CubistSet set = weight2_example7();
    Box window = Box::cube(3, 5);
    std::vector<std::array<std::array<double, 2>, 4>> polys;
    for (const Point& x : set.points_in_window(window)) {
        auto corners = facet_points(set.facet_of(x), 3);
        std::swap(corners[2], corners[3]);
        bool inside = true;
        for (const Point& c : corners)
            if (!window.contains(c)) inside = false;
        if (!inside) continue;
        std::array<std::array<double, 2>, 4> poly;
        for (int i = 0; i < 4; ++i) poly[i] = project_point(corners[i], 3);
        polys.push_back(poly);
    }
    REQUIRE(polys.size() > 10);

    auto winding = [](const std::array<std::array<double, 2>, 4>& poly, double px,
                      double py) {
        bool in = false;
        for (int i = 0, j = 3; i < 4; j = i++) {
            double xi = poly[i][0], yi = poly[i][1];
            double xj = poly[j][0], yj = poly[j][1];
            if ((yi > py) != (yj > py) &&
                px < (xj - xi) * (py - yi) / (yj - yi) + xi)
                in = !in;
        }
        return in;
    };

    // sample irrational-offset points inside a small disc around the origin
    int covered_once = 0, total = 0;
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            double px = a * 0.237 + 0.1111, py = b * 0.219 + 0.0707;
            if (std::hypot(px, py) > 1.6) continue;
            int hits = 0;
            for (const auto& poly : polys) hits += winding(poly, px, py);
            ++total;
            covered_once += hits == 1;
        }
    CHECK(total > 50);
    CHECK(covered_once == total);
}
