#include "pboreg/genome.hpp"

#include <cmath>
#include <stdexcept>

namespace pboreg {

double EncodingSpec::value_of(std::uint32_t v) const {
    const double top = static_cast<double>(levels() - 1);
    return radius * (2.0 * static_cast<double>(v) - top) / top;
}

std::uint32_t EncodingSpec::level_of(double x) const {
    const double top = static_cast<double>(levels() - 1);
    const double clamped = std::clamp(x, -radius, radius);
    // Nearest level; exact half-step ties round down.
    const double t = (clamped + radius) * top / (2.0 * radius);
    double v = std::ceil(t - 0.5);
    v = std::clamp(v, 0.0, top);
    return static_cast<std::uint32_t>(v);
}

double decode_param(std::span<const std::uint8_t> group, const EncodingSpec& spec) {
    if (static_cast<int>(group.size()) != spec.bits_per_param)
        throw std::invalid_argument("decode_param: group size does not match bits_per_param");
    std::uint32_t v = 0;
    for (std::uint8_t b : group) v = (v << 1) | (b & 1u);  // MSB first
    return spec.value_of(v);
}

std::vector<Vec2> decode_genome(const Genome& g, const EncodingSpec& spec) {
    const int b = spec.bits_per_param;
    if (g.bits_per_param != b)
        throw std::invalid_argument("decode_genome: genome encoded with a different bit width");
    if (b <= 0 || g.bits.size() % static_cast<std::size_t>(2 * b) != 0)
        throw std::invalid_argument("decode_genome: genome length is not a whole number of (x, y) pairs");

    const int n = g.n_vectors();
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    std::span<const std::uint8_t> bits(g.bits);
    for (int i = 0; i < n; ++i) {
        Vec2 v{decode_param(bits.subspan(static_cast<std::size_t>(2 * i) * b, b), spec),
               decode_param(bits.subspan(static_cast<std::size_t>(2 * i + 1) * b, b), spec)};
        const double len = norm(v);
        if (len > spec.radius) v = (spec.radius / len) * v;
        out.push_back(v);
    }
    return out;
}

namespace {

void append_bits(std::vector<std::uint8_t>& bits, std::uint32_t v, int width) {
    for (int i = width - 1; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
}

}  // namespace

Genome encode_genome(std::span<const Vec2> vectors, const EncodingSpec& spec) {
    Genome g;
    g.bits_per_param = spec.bits_per_param;
    g.bits.reserve(vectors.size() * 2 * static_cast<std::size_t>(spec.bits_per_param));
    for (const Vec2& v : vectors) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw std::invalid_argument("encode_genome: non-finite displacement component");
        append_bits(g.bits, spec.level_of(v.x), spec.bits_per_param);
        append_bits(g.bits, spec.level_of(v.y), spec.bits_per_param);
    }
    return g;
}

}  // namespace pboreg
