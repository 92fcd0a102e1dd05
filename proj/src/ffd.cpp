#include "pboreg/ffd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pboreg {

ControlLattice ControlLattice::zero(const LatticeSpec& spec) {
    if (spec.k < 2 || spec.l < 2)
        throw std::invalid_argument("ControlLattice: lattice needs at least 2x2 covering points");
    if (spec.image_w < 1 || spec.image_h < 1)
        throw std::invalid_argument("ControlLattice: empty image domain");
    ControlLattice lat;
    lat.spec = spec;
    lat.d.assign(static_cast<std::size_t>(spec.node_count()), Vec2{});
    return lat;
}

std::array<double, 4> bspline_weights(double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double it = 1.0 - t;
    return {it * it * it / 6.0,
            (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
            (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0,
            t3 / 6.0};
}

double bspline_basis(int index, double t) {
    if (index < 0 || index > 3) throw std::out_of_range("bspline_basis: index outside 0..3");
    return bspline_weights(t)[static_cast<std::size_t>(index)];
}

namespace {

struct CellCoord {
    int base;  // first contributing node index (cell - 1)
    double frac;
};

// Cell index is clamped so that base+3 never leaves the stored grid even if
// rounding puts a boundary coordinate exactly on the last knot.
CellCoord locate(double coord, double spacing, int cells) {
    const double s = coord / spacing;
    int cell = static_cast<int>(std::floor(s));
    cell = std::clamp(cell, 0, cells - 1);
    return {cell - 1, s - cell};
}

Vec2 map_point_unchecked(Vec2 p, const ControlLattice& lat) {
    const LatticeSpec& s = lat.spec;
    const CellCoord cx = locate(p.x, s.dx(), s.k - 1);
    const CellCoord cy = locate(p.y, s.dy(), s.l - 1);
    const std::array<double, 4> wu = bspline_weights(cx.frac);
    const std::array<double, 4> wv = bspline_weights(cy.frac);
    double dx = 0.0, dy = 0.0;
    for (int m = 0; m < 4; ++m) {
        const Vec2* row = &lat.at(cx.base, cy.base + m);
        for (int l = 0; l < 4; ++l) {
            const double w = wu[static_cast<std::size_t>(l)] * wv[static_cast<std::size_t>(m)];
            dx += w * row[l].x;
            dy += w * row[l].y;
        }
    }
    return {p.x + dx, p.y + dy};
}

}  // namespace

Vec2 clamp_to_domain(Vec2 p, const LatticeSpec& spec) {
    const double xmax = std::nextafter(static_cast<double>(spec.image_w), 0.0);
    const double ymax = std::nextafter(static_cast<double>(spec.image_h), 0.0);
    return {std::clamp(p.x, 0.0, xmax), std::clamp(p.y, 0.0, ymax)};
}

Vec2 map_point(Vec2 p, const ControlLattice& lat) {
    const LatticeSpec& s = lat.spec;
    if (!(p.x >= 0.0 && p.x < s.image_w && p.y >= 0.0 && p.y < s.image_h))
        throw std::out_of_range("map_point: point outside the image domain");
    return map_point_unchecked(p, lat);
}

Vec2 map_point_clamped(Vec2 p, const ControlLattice& lat) {
    return map_point_unchecked(clamp_to_domain(p, lat.spec), lat);
}

AxisTable make_axis_table(int size_px, double spacing, int cells) {
    AxisTable t;
    t.base.resize(static_cast<std::size_t>(size_px));
    t.w.resize(static_cast<std::size_t>(size_px));
    for (int p = 0; p < size_px; ++p) {
        const CellCoord c = locate(static_cast<double>(p), spacing, cells);
        t.base[static_cast<std::size_t>(p)] = c.base;
        t.w[static_cast<std::size_t>(p)] = bspline_weights(c.frac);
    }
    return t;
}

Vec2 map_pixel(int x, int y, const ControlLattice& lat, const AxisTable& xt, const AxisTable& yt) {
    const std::array<double, 4>& wu = xt.w[static_cast<std::size_t>(x)];
    const std::array<double, 4>& wv = yt.w[static_cast<std::size_t>(y)];
    const int i = xt.base[static_cast<std::size_t>(x)];
    const int j = yt.base[static_cast<std::size_t>(y)];
    double dx = 0.0, dy = 0.0;
    for (int m = 0; m < 4; ++m) {
        const Vec2* row = &lat.at(i, j + m);
        const double vm = wv[static_cast<std::size_t>(m)];
        for (int l = 0; l < 4; ++l) {
            const double w = wu[static_cast<std::size_t>(l)] * vm;
            dx += w * row[l].x;
            dy += w * row[l].y;
        }
    }
    return {static_cast<double>(x) + dx, static_cast<double>(y) + dy};
}

std::vector<Vec2> displacement_field(const ControlLattice& lat, int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("displacement_field: empty output grid");
    const AxisTable xt = make_axis_table(w, lat.spec.dx(), lat.spec.k - 1);
    const AxisTable yt = make_axis_table(h, lat.spec.dy(), lat.spec.l - 1);
    std::vector<Vec2> field(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const Vec2 mapped = map_pixel(x, y, lat, xt, yt);
            field[static_cast<std::size_t>(y) * w + x] = {mapped.x - x, mapped.y - y};
        }
    return field;
}

}  // namespace pboreg
