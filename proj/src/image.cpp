#include "pboreg/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pboreg {

GrayImage GrayImage::filled(int w, int h, double value) {
    if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be positive");
    GrayImage img;
    img.w = w;
    img.h = h;
    img.data.assign(static_cast<std::size_t>(w) * h, value);
    return img;
}

double sample_bilinear(const GrayImage& img, Vec2 p) {
    const double x = std::clamp(p.x, 0.0, static_cast<double>(img.w - 1));
    const double y = std::clamp(p.y, 0.0, static_cast<double>(img.h - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, img.w - 1);
    const int y1 = std::min(y0 + 1, img.h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
    const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
    return top * (1.0 - fy) + bottom * fy;
}

namespace {

void check_lattice_matches(const GrayImage& img, const ControlLattice& lat, const char* what) {
    if (lat.spec.image_w != img.w || lat.spec.image_h != img.h)
        throw std::invalid_argument(std::string(what) + ": lattice spec does not match image dimensions");
}

}  // namespace

GrayImage warp(const GrayImage& source, const ControlLattice& lat) {
    check_lattice_matches(source, lat, "warp");
    const AxisTable xt = make_axis_table(source.w, lat.spec.dx(), lat.spec.k - 1);
    const AxisTable yt = make_axis_table(source.h, lat.spec.dy(), lat.spec.l - 1);
    GrayImage out = GrayImage::filled(source.w, source.h, 0.0);
    for (int y = 0; y < source.h; ++y)
        for (int x = 0; x < source.w; ++x)
            out.at(x, y) = sample_bilinear(source, map_pixel(x, y, lat, xt, yt));
    return out;
}

double sad(const GrayImage& a, const GrayImage& b) {
    if (a.w != b.w || a.h != b.h) throw std::invalid_argument("sad: image dimensions differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) acc += std::abs(a.data[i] - b.data[i]);
    return acc;
}

namespace {

ControlLattice residual_lattice(const Genome& g, const LatticeSpec& spec, const EncodingSpec& enc,
                                const ControlLattice& baseline) {
    if (baseline.spec != spec)
        throw std::invalid_argument("objective: baseline lattice spec mismatch");
    const std::vector<Vec2> residual = decode_genome(g, enc);
    if (static_cast<int>(residual.size()) != spec.node_count())
        throw std::invalid_argument("objective: genome decodes to wrong node count");
    ControlLattice lat = baseline;
    for (std::size_t i = 0; i < lat.d.size(); ++i) lat.d[i] = lat.d[i] + residual[i];
    return lat;
}

double warp_sad(const GrayImage& source, const GrayImage& target, const ControlLattice& lat,
                const AxisTable& xt, const AxisTable& yt) {
    double acc = 0.0;
    for (int y = 0; y < source.h; ++y)
        for (int x = 0; x < source.w; ++x)
            acc += std::abs(sample_bilinear(source, map_pixel(x, y, lat, xt, yt)) - target.at(x, y));
    return acc;
}

}  // namespace

double objective(const Genome& g, const GrayImage& source, const GrayImage& target,
                 const LatticeSpec& spec, const EncodingSpec& enc, const ControlLattice& baseline) {
    if (source.w != spec.image_w || source.h != spec.image_h)
        throw std::invalid_argument("objective: source dimensions do not match lattice spec");
    if (target.w != spec.image_w || target.h != spec.image_h)
        throw std::invalid_argument("objective: target dimensions do not match lattice spec");
    return sad(warp(source, residual_lattice(g, spec, enc, baseline)), target);
}

WarpSadObjective::WarpSadObjective(GrayImage source, GrayImage target, const LatticeSpec& spec,
                                   const EncodingSpec& enc, ControlLattice baseline)
    : source_(std::move(source)),
      target_(std::move(target)),
      spec_(spec),
      enc_(enc),
      baseline_(std::move(baseline)) {
    if (source_.w != spec_.image_w || source_.h != spec_.image_h)
        throw std::invalid_argument("WarpSadObjective: source dimensions do not match lattice spec");
    if (target_.w != spec_.image_w || target_.h != spec_.image_h)
        throw std::invalid_argument("WarpSadObjective: target dimensions do not match lattice spec");
    if (baseline_.spec != spec_)
        throw std::invalid_argument("WarpSadObjective: baseline lattice spec mismatch");
    xt_ = make_axis_table(spec_.image_w, spec_.dx(), spec_.k - 1);
    yt_ = make_axis_table(spec_.image_h, spec_.dy(), spec_.l - 1);
}

double WarpSadObjective::operator()(const Genome& g) const {
    const ControlLattice lat = residual_lattice(g, spec_, enc_, baseline_);
    return warp_sad(source_, target_, lat, xt_, yt_);
}

}  // namespace pboreg
