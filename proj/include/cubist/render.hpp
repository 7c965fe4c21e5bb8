#pragma once

// Projection of the cubical complex to the zero-sum hyperplane and static
// SVG output: rhombus tilings for rank 3, line diagrams for rank 2.

#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flips.hpp"
#include "point.hpp"
#include "set.hpp"

namespace cubist {

/// Orthogonal projection onto the hyperplane sum(x_i) = 0 followed by a
/// fixed isometry to the drawing plane.  For rank 3 the basis vectors map
/// to unit vectors at 90, 210 and 330 degrees; for rank 2 to (1,0) and
/// (-1,0).  (1,...,1) maps to the origin either way.
inline std::array<double, 2> project_point(const Point& x, int rank) {
    if (rank == 2) {
        double t = x[0] - x[1];
        return {t, 0.0};
    }
    if (rank == 3) {
        static const double s3 = std::sqrt(3.0) / 2.0;
        double px = -s3 * x[1] + s3 * x[2];
        double py = x[0] - 0.5 * x[1] - 0.5 * x[2];
        return {px, py};
    }
    throw std::invalid_argument("project_point: rank must be 2 or 3");
}

struct Highlights {
    std::vector<Point> discs;   // generic marked vertices
    std::vector<Point> squares; // e.g. the image of a block pyramid
    std::vector<Point> rings;   // e.g. flippable vertices
    bool ring_flippable = false;
};

namespace render_detail {

inline std::string fmt(double v) {
    char buf[40];
    // one canonical fixed-point form, no negative zero
    if (v > -5e-5 && v < 5e-5) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace render_detail

/// One polygon per facet of X whose vertices all lie inside the window,
/// marker overlays per highlight class.  Output is deterministic for fixed
/// inputs.
inline std::string svg_tiling(const CubistSet& set, const Box& window,
                              const Highlights& highlights = {}) {
    using render_detail::fmt;
    int r = set.rank();
    if (r != 2 && r != 3)
        throw std::invalid_argument("svg_tiling: rank must be 2 or 3");

    std::vector<Point> pts = set.points_in_window(window);
    std::vector<std::vector<Point>> polys;
    for (const Point& x : pts) {
        Facet f = set.facet_of(x);
        std::vector<Point> corners = facet_points(f, r);
        bool inside = true;
        for (const Point& c : corners)
            if (!window.contains(c)) inside = false;
        if (!inside) continue;
        if (r == 3) {
            // order the four corners around the rhombus
            std::swap(corners[2], corners[3]);
        }
        polys.push_back(std::move(corners));
    }

    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool first = true;
    auto grow = [&](const std::array<double, 2>& p) {
        if (first) {
            minx = maxx = p[0];
            miny = maxy = p[1];
            first = false;
        } else {
            minx = std::min(minx, p[0]);
            maxx = std::max(maxx, p[0]);
            miny = std::min(miny, p[1]);
            maxy = std::max(maxy, p[1]);
        }
    };
    for (const auto& poly : polys)
        for (const Point& c : poly) grow(project_point(c, r));
    for (const Point& x : pts) grow(project_point(x, r));
    if (first) { minx = miny = -1; maxx = maxy = 1; }

    const double scale = 40.0, pad = 20.0;
    auto sx = [&](double v) { return (v - minx) * scale + pad; };
    auto sy = [&](double v) { return (maxy - v) * scale + pad; };
    auto at = [&](const Point& c) {
        auto p = project_point(c, r);
        return std::array<double, 2>{sx(p[0]), sy(p[1])};
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << fmt((maxx - minx) * scale + 2 * pad) << "\" height=\""
        << fmt((maxy - miny) * scale + 2 * pad) << "\">\n";
    for (const auto& poly : polys) {
        if (r == 3) {
            svg << "<polygon points=\"";
            for (std::size_t i = 0; i < poly.size(); ++i) {
                auto p = at(poly[i]);
                if (i) svg << " ";
                svg << fmt(p[0]) << "," << fmt(p[1]);
            }
            svg << "\" fill=\"#f4ecd8\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        } else {
            auto a = at(poly[0]), b = at(poly[1]);
            svg << "<line x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\""
                << fmt(b[0]) << "\" y2=\"" << fmt(b[1])
                << "\" stroke=\"#333333\" stroke-width=\"2\"/>\n";
        }
    }
    auto emit_disc = [&](const Point& x) {
        auto p = at(x);
        svg << "<circle cx=\"" << fmt(p[0]) << "\" cy=\"" << fmt(p[1])
            << "\" r=\"4\" fill=\"#1f5fa8\"/>\n";
    };
    auto emit_square = [&](const Point& x) {
        auto p = at(x);
        svg << "<rect x=\"" << fmt(p[0] - 4) << "\" y=\"" << fmt(p[1] - 4)
            << "\" width=\"8\" height=\"8\" fill=\"#111111\"/>\n";
    };
    auto emit_ring = [&](const Point& x) {
        auto p = at(x);
        svg << "<circle cx=\"" << fmt(p[0]) << "\" cy=\"" << fmt(p[1])
            << "\" r=\"6\" fill=\"none\" stroke=\"#b02020\" stroke-width=\"2\"/>\n";
    };
    for (const Point& x : highlights.discs)
        if (window.contains(x)) emit_disc(x);
    for (const Point& x : highlights.squares)
        if (window.contains(x)) emit_square(x);
    for (const Point& x : highlights.rings)
        if (window.contains(x)) emit_ring(x);
    if (highlights.ring_flippable)
        for (const Point& x : pts)
            if (is_flippable(set, x)) emit_ring(x);
    svg << "</svg>\n";
    return svg.str();
}

} // namespace cubist
