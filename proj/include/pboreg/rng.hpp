#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pboreg {

// splitmix64 finalizer; good avalanche, used only for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from one master seed and a tag path,
/// e.g. derive_seed(master, {kTagPbo, generation, individual}). Evaluation
/// order can then never change which random numbers an operator sees.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t t : tags) s = mix64(s ^ mix64(t));
    return s;
}

// Stream tags for derive_seed. Values are arbitrary but fixed: changing them
// changes every seeded result.
inline constexpr std::uint64_t kTagInit = 0x01;
inline constexpr std::uint64_t kTagTargets = 0x02;
inline constexpr std::uint64_t kTagPbo = 0x03;
inline constexpr std::uint64_t kTagRoulette = 0x04;
inline constexpr std::uint64_t kTagBaseline = 0x05;
inline constexpr std::uint64_t kTagLevel = 0x06;
inline constexpr std::uint64_t kTagEngine = 0x07;
inline constexpr std::uint64_t kTagCase = 0x08;
inline constexpr std::uint64_t kTagTexture = 0x09;
inline constexpr std::uint64_t kTagDeform = 0x0a;
inline constexpr std::uint64_t kTagPboRun = 0x0b;
inline constexpr std::uint64_t kTagBaselineRun = 0x0c;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). n must be nonzero.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace pboreg
