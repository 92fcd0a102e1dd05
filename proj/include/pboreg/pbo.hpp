#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pboreg/genome.hpp"
#include "pboreg/rng.hpp"

namespace pboreg {

/// Shape of the bit-inversion probability surface. The probability is
/// w_max * exp(-((bit/s_bit)^2 + (fit/s_fit)^2) / 2), so well-rated
/// individuals and significant bits are disturbed least.
struct PBOParams {
    double w_max = 0.5;
    double s_bit = 2.0;
    double s_fit = 0.3;
};

/// Annealing curve for the per-generation share of individuals subjected to
/// the bitwise operator: starts at 1, decays to p_min at generation g_size.
/// e controls the curvature of the decay.
struct AnnealParams {
    double e = 1.0;
    double p_min = 0.1;
    int g_size = 200;
};

struct Individual {
    Genome genome;
    std::optional<double> raw_objective;  // SAD, lower is better; empty = stale
    double norm_fitness = 0.0;            // min-max normalized, best -> 1
};

struct Population {
    std::vector<Individual> individuals;
    int generation = 0;
    std::uint64_t rng_seed = 0;

    std::size_t size() const { return individuals.size(); }
};

struct GenerationLogRow {
    int generation = 0;
    double best_sad = 0.0;
    double mean_sad = 0.0;
    double p_ann = 0.0;
    double mean_hamming = 0.0;
};

using ObjectiveFn = std::function<double(const Genome&)>;

/// Probability that a bit of the given significance flips. bit_index counts
/// within one parameter group with 0 at the least significant bit.
double compute_inversion_probability(int bit_index, double norm_fitness, const PBOParams& p);

/// Min-max normalization of raw objectives: lowest objective maps to 1,
/// highest to 0. If all objectives are equal, everyone gets 1.
std::vector<double> normalize_fitness(std::span<const double> objectives);

/// Applies normalize_fitness to a fully evaluated population in place.
void normalize_population_fitness(Population& pop);

/// Annealing selection rate at generation i (1 at i = 0, p_min at i = g_size).
double annealing_rate(int generation, const AnnealParams& a);

/// Independently flips each genome bit with its inversion probability and
/// marks the objective stale. The input individual is not modified.
Individual apply_pbo(const Individual& ind, const PBOParams& p, Rng& rng);

/// Index of the best (lowest objective) individual; ties go to the lowest
/// index. Requires every individual evaluated.
std::size_t elite_index(const Population& pop);

/// Marks each non-elite individual with probability rate. The elite is never
/// marked. Returns one 0/1 flag per individual.
std::vector<std::uint8_t> select_pbo_targets(const Population& pop, double rate, Rng& rng);

/// Next generation: slot 0 is a copy of the elite, the remaining slots are
/// drawn with replacement proportionally to norm_fitness + 1e-6.
Population roulette_select(const Population& pop, Rng& rng);

/// Mean pairwise Hamming distance divided by genome length, in [0, 1].
/// Requires at least two individuals.
double hamming_diversity(const Population& pop);

/// Evaluates every stale individual; throws on non-finite objective values.
void evaluate_population(Population& pop, const ObjectiveFn& objective, int threads = 1);

struct LoopResult {
    Population population;
    std::vector<GenerationLogRow> log;
};

/// The full generation loop: evaluate, log, select targets by annealing
/// rate, apply the bitwise operator, re-evaluate, roulette-select survivors.
/// Deterministic for a fixed population seed, config, and objective.
LoopResult run_generation_loop(Population initial, const PBOParams& pbo, const AnnealParams& anneal,
                               const ObjectiveFn& objective, int threads = 1);

/// Engine plug point for the coarse-to-fine driver.
using EngineFn =
    std::function<LoopResult(Population initial, int generations, const ObjectiveFn&, int threads)>;

EngineFn make_pbo_engine(const PBOParams& pbo, double anneal_e, double p_min);

/// Population of uniform random bit strings.
Population make_random_population(int size, int genome_bits, int bits_per_param, std::uint64_t seed);

}  // namespace pboreg
