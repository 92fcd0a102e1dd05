#pragma once

#include <array>
#include <vector>

#include "pboreg/geometry.hpp"

namespace pboreg {

/// Control lattice geometry: K x L points cover a W x H image at spacings
/// dx = W/(K-1), dy = H/(L-1). Deformation additionally needs one border
/// ring, so the stored grid is (K+2) x (L+2) with indices -1..K by -1..L;
/// node (i, j) sits at (i*dx, j*dy).
struct LatticeSpec {
    int image_w = 0;
    int image_h = 0;
    int k = 0;
    int l = 0;

    double dx() const { return static_cast<double>(image_w) / (k - 1); }
    double dy() const { return static_cast<double>(image_h) / (l - 1); }
    int node_cols() const { return k + 2; }
    int node_rows() const { return l + 2; }
    int node_count() const { return node_cols() * node_rows(); }

    bool operator==(const LatticeSpec&) const = default;
};

struct ControlLattice {
    LatticeSpec spec;
    std::vector<Vec2> d;  // row-major: rows j = -1..l, columns i = -1..k

    static ControlLattice zero(const LatticeSpec& spec);

    Vec2& at(int i, int j) {
        return d[static_cast<std::size_t>(j + 1) * spec.node_cols() + (i + 1)];
    }
    const Vec2& at(int i, int j) const {
        return d[static_cast<std::size_t>(j + 1) * spec.node_cols() + (i + 1)];
    }
};

/// Uniform cubic B-spline basis function of given index (0..3) at t in [0,1).
double bspline_basis(int index, double t);

/// All four basis values at t.
std::array<double, 4> bspline_weights(double t);

/// Maps a point through the free-form deformation. p must lie in
/// [0, W) x [0, H); the result may lie outside the image.
Vec2 map_point(Vec2 p, const ControlLattice& lat);

/// Clamps p into the image domain first, then maps. Used when evaluating the
/// deformation at positions that may fall on or beyond the boundary.
Vec2 map_point_clamped(Vec2 p, const ControlLattice& lat);

/// Largest representable point inside the half-open domain.
Vec2 clamp_to_domain(Vec2 p, const LatticeSpec& spec);

/// Dense w x h grid of displacements: entry (x, y) = map_point((x,y)) - (x,y).
std::vector<Vec2> displacement_field(const ControlLattice& lat, int w, int h);

/// Per-axis sampling table: cell index and the four basis weights for every
/// integer pixel coordinate. Shared by the warping hot loops.
struct AxisTable {
    std::vector<int> base;                    // first contributing node index
    std::vector<std::array<double, 4>> w;
};

AxisTable make_axis_table(int size_px, double spacing, int cells);

/// Table-driven evaluation of map_point at integer pixel (x, y).
Vec2 map_pixel(int x, int y, const ControlLattice& lat, const AxisTable& xt, const AxisTable& yt);

}  // namespace pboreg
