#pragma once

#include <cstddef>
#include <vector>

#include "pboreg/ffd.hpp"
#include "pboreg/genome.hpp"

namespace pboreg {

/// Grayscale raster, row-major, intensities in [0, 1].
struct GrayImage {
    int w = 0;
    int h = 0;
    std::vector<double> data;

    static GrayImage filled(int w, int h, double value);

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * w + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * w + x]; }

    bool operator==(const GrayImage&) const = default;
};

/// Bilinear interpolation with clamp-to-edge: the coordinates are clamped to
/// [0, w-1] x [0, h-1] before interpolating.
double sample_bilinear(const GrayImage& img, Vec2 p);

/// Backward warp: out(x, y) = source sampled at map_point((x, y)).
GrayImage warp(const GrayImage& source, const ControlLattice& lat);

/// Sum of absolute intensity differences over all pixels.
double sad(const GrayImage& a, const GrayImage& b);

/// SAD objective of one genome: lattice = baseline + decoded residual,
/// objective = sad(warp(source, lattice), target).
double objective(const Genome& g, const GrayImage& source, const GrayImage& target,
                 const LatticeSpec& spec, const EncodingSpec& enc, const ControlLattice& baseline);

/// Reusable objective functor: caches the basis tables for the lattice spec.
/// operator() is const and allocation-local, safe to call concurrently.
class WarpSadObjective {
public:
    WarpSadObjective(GrayImage source, GrayImage target, const LatticeSpec& spec,
                     const EncodingSpec& enc, ControlLattice baseline);

    double operator()(const Genome& g) const;

private:
    GrayImage source_;
    GrayImage target_;
    LatticeSpec spec_;
    EncodingSpec enc_;
    ControlLattice baseline_;
    AxisTable xt_, yt_;
};

}  // namespace pboreg
