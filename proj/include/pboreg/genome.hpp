#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pboreg/geometry.hpp"

namespace pboreg {

/// Fixed-point binary encoding of one displacement scalar: B bits read
/// MSB-first, mapped linearly onto [-radius, +radius] with 2^B levels.
/// The endpoints are exactly representable; an exact zero is not.
struct EncodingSpec {
    int bits_per_param = 5;
    double radius = 3.0;

    int levels() const { return 1 << bits_per_param; }
    double step() const { return 2.0 * radius / (levels() - 1); }

    /// Decode an unsigned level v in [0, 2^B) to its scalar value.
    double value_of(std::uint32_t v) const;

    /// Clamp x to [-radius, radius] and quantize to the nearest level.
    /// Ties between adjacent levels go to the lower unsigned value.
    std::uint32_t level_of(double x) const;
};

/// Bit-string chromosome. Parameters are laid out as consecutive B-bit
/// groups, MSB first within each group; groups alternate x, y per lattice
/// node in row-major node order.
struct Genome {
    std::vector<std::uint8_t> bits;  // one 0/1 per element
    int bits_per_param = 0;

    int n_params() const { return bits_per_param > 0 ? static_cast<int>(bits.size()) / bits_per_param : 0; }
    int n_vectors() const { return n_params() / 2; }

    bool operator==(const Genome&) const = default;
};

/// Decode one B-bit group to its displacement scalar in pixels.
double decode_param(std::span<const std::uint8_t> group, const EncodingSpec& spec);

/// Decode a whole genome to one 2D displacement per lattice node. Vectors
/// whose Euclidean norm exceeds the encoding radius are scaled radially back
/// to exactly that norm, so every emitted vector lies within the radius disk.
std::vector<Vec2> decode_genome(const Genome& g, const EncodingSpec& spec);

/// Quantize displacement vectors back into a genome (per-component clamp,
/// then nearest-level rounding with ties toward the lower level).
Genome encode_genome(std::span<const Vec2> vectors, const EncodingSpec& spec);

}  // namespace pboreg
