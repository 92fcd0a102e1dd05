#include "pboreg/pbo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pboreg/util.hpp"

namespace pboreg {

double compute_inversion_probability(int bit_index, double norm_fitness, const PBOParams& p) {
    const double b = static_cast<double>(bit_index) / p.s_bit;
    const double f = norm_fitness / p.s_fit;
    return p.w_max * std::exp(-0.5 * (b * b + f * f));
}

std::vector<double> normalize_fitness(std::span<const double> objectives) {
    if (objectives.empty()) throw std::invalid_argument("normalize_fitness: empty population");
    const auto [lo, hi] = std::minmax_element(objectives.begin(), objectives.end());
    std::vector<double> fit(objectives.size());
    if (*hi == *lo) {
        std::fill(fit.begin(), fit.end(), 1.0);
        return fit;
    }
    const double span = *hi - *lo;
    for (std::size_t i = 0; i < objectives.size(); ++i) fit[i] = (*hi - objectives[i]) / span;
    return fit;
}

void normalize_population_fitness(Population& pop) {
    std::vector<double> objectives(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Individual& ind = pop.individuals[i];
        if (!ind.raw_objective)
            throw std::logic_error("normalize_population_fitness: stale objective");
        objectives[i] = *ind.raw_objective;
    }
    const std::vector<double> fit = normalize_fitness(objectives);
    for (std::size_t i = 0; i < pop.size(); ++i) pop.individuals[i].norm_fitness = fit[i];
}

double annealing_rate(int generation, const AnnealParams& a) {
    const double num = 1.0 - std::exp(a.e * static_cast<double>(generation) / a.g_size);
    return num / (std::exp(a.e) - 1.0) * (1.0 - a.p_min) + 1.0;
}

Individual apply_pbo(const Individual& ind, const PBOParams& p, Rng& rng) {
    Individual out = ind;
    const int b = ind.genome.bits_per_param;
    if (b <= 0) throw std::invalid_argument("apply_pbo: genome has no parameter width");

    // The probability only depends on the significance index, so the B
    // distinct values are computed once per individual.
    std::vector<double> pinv(static_cast<std::size_t>(b));
    for (int s = 0; s < b; ++s)
        pinv[static_cast<std::size_t>(s)] = compute_inversion_probability(s, ind.norm_fitness, p);

    std::vector<std::uint8_t>& bits = out.genome.bits;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        // Groups are stored MSB first; significance 0 is the group's last bit.
        const int sig = b - 1 - static_cast<int>(i % static_cast<std::size_t>(b));
        if (rng.bernoulli(pinv[static_cast<std::size_t>(sig)])) bits[i] ^= 1u;
    }
    out.raw_objective.reset();
    return out;
}

std::size_t elite_index(const Population& pop) {
    if (pop.individuals.empty()) throw std::invalid_argument("elite_index: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        const Individual& ind = pop.individuals[i];
        if (!ind.raw_objective) throw std::logic_error("elite_index: stale objective");
        if (*ind.raw_objective < *pop.individuals[best].raw_objective) best = i;
    }
    if (!pop.individuals[0].raw_objective) throw std::logic_error("elite_index: stale objective");
    return best;
}

std::vector<std::uint8_t> select_pbo_targets(const Population& pop, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("select_pbo_targets: rate outside [0, 1]");
    const std::size_t elite = elite_index(pop);
    std::vector<std::uint8_t> mask(pop.size(), 0);
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (i != elite && rng.bernoulli(rate)) mask[i] = 1;
    return mask;
}

Population roulette_select(const Population& pop, Rng& rng) {
    constexpr double kEpsilon = 1e-6;
    const std::size_t n = pop.size();
    const std::size_t elite = elite_index(pop);

    Population next;
    next.generation = pop.generation + 1;
    next.rng_seed = pop.rng_seed;
    next.individuals.reserve(n);
    next.individuals.push_back(pop.individuals[elite]);

    std::vector<double> cumulative(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += pop.individuals[i].norm_fitness + kEpsilon;
        cumulative[i] = acc;
    }
    for (std::size_t slot = 1; slot < n; ++slot) {
        const double r = rng.uniform01() * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), n - 1);
        next.individuals.push_back(pop.individuals[idx]);
    }
    return next;
}

double hamming_diversity(const Population& pop) {
    const std::size_t n = pop.size();
    if (n < 2) throw std::invalid_argument("hamming_diversity: need at least 2 individuals");
    const std::size_t len = pop.individuals[0].genome.bits.size();
    if (len == 0) throw std::invalid_argument("hamming_diversity: empty genomes");

    std::uint64_t total = 0;
    for (std::size_t a = 0; a + 1 < n; ++a) {
        const std::vector<std::uint8_t>& ga = pop.individuals[a].genome.bits;
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::vector<std::uint8_t>& gb = pop.individuals[b].genome.bits;
            if (gb.size() != len)
                throw std::invalid_argument("hamming_diversity: genome lengths differ");
            std::uint64_t diff = 0;
            for (std::size_t i = 0; i < len; ++i) diff += ga[i] != gb[i];
            total += diff;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(total) / (static_cast<double>(len) * pairs);
}

void evaluate_population(Population& pop, const ObjectiveFn& objective, int threads) {
    std::vector<std::size_t> stale;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (!pop.individuals[i].raw_objective) stale.push_back(i);
    parallel_for(stale.size(), threads, [&](std::size_t s) {
        Individual& ind = pop.individuals[stale[s]];
        ind.raw_objective = objective(ind.genome);
    });
    for (std::size_t i : stale) {
        if (!std::isfinite(*pop.individuals[i].raw_objective))
            throw std::runtime_error("objective returned a non-finite value");
    }
}

namespace {

double best_objective(const Population& pop) {
    return *pop.individuals[elite_index(pop)].raw_objective;
}

double mean_objective(const Population& pop) {
    double acc = 0.0;
    for (const Individual& ind : pop.individuals) acc += *ind.raw_objective;
    return acc / static_cast<double>(pop.size());
}

void check_uniform_genomes(const Population& pop) {
    if (pop.individuals.empty())
        throw std::invalid_argument("run_generation_loop: empty population");
    const std::size_t len = pop.individuals[0].genome.bits.size();
    const int b = pop.individuals[0].genome.bits_per_param;
    for (const Individual& ind : pop.individuals)
        if (ind.genome.bits.size() != len || ind.genome.bits_per_param != b)
            throw std::invalid_argument("run_generation_loop: genomes are not uniform");
}

}  // namespace

LoopResult run_generation_loop(Population initial, const PBOParams& pbo, const AnnealParams& anneal,
                               const ObjectiveFn& objective, int threads) {
    check_uniform_genomes(initial);
    LoopResult out;
    out.population = std::move(initial);
    Population& pop = out.population;
    const std::uint64_t master = pop.rng_seed;

    for (int i = 0; i < anneal.g_size; ++i) {
        evaluate_population(pop, objective, threads);
        normalize_population_fitness(pop);

        const double p_ann = annealing_rate(i, anneal);
        out.log.push_back({i, best_objective(pop), mean_objective(pop), p_ann,
                           pop.size() >= 2 ? hamming_diversity(pop) : 0.0});

        Rng target_rng(derive_seed(master, {kTagTargets, static_cast<std::uint64_t>(i)}));
        const std::vector<std::uint8_t> mask = select_pbo_targets(pop, p_ann, target_rng);
        for (std::size_t j = 0; j < pop.size(); ++j) {
            if (!mask[j]) continue;
            Rng pbo_rng(derive_seed(master, {kTagPbo, static_cast<std::uint64_t>(i), j}));
            pop.individuals[j] = apply_pbo(pop.individuals[j], pbo, pbo_rng);
        }

        evaluate_population(pop, objective, threads);
        normalize_population_fitness(pop);

        Rng roulette_rng(derive_seed(master, {kTagRoulette, static_cast<std::uint64_t>(i)}));
        pop = roulette_select(pop, roulette_rng);
    }
    return out;
}

EngineFn make_pbo_engine(const PBOParams& pbo, double anneal_e, double p_min) {
    return [pbo, anneal_e, p_min](Population initial, int generations, const ObjectiveFn& objective,
                                  int threads) {
        const AnnealParams anneal{anneal_e, p_min, generations};
        return run_generation_loop(std::move(initial), pbo, anneal, objective, threads);
    };
}

Population make_random_population(int size, int genome_bits, int bits_per_param,
                                  std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("make_random_population: size must be positive");
    Population pop;
    pop.rng_seed = seed;
    pop.individuals.resize(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        Rng rng(derive_seed(seed, {kTagInit, static_cast<std::uint64_t>(i)}));
        Genome g;
        g.bits_per_param = bits_per_param;
        g.bits.resize(static_cast<std::size_t>(genome_bits));
        for (std::uint8_t& bit : g.bits) bit = static_cast<std::uint8_t>(rng.next() & 1u);
        pop.individuals[static_cast<std::size_t>(i)].genome = std::move(g);
    }
    return pop;
}

}  // namespace pboreg
