#include "pboreg/pyramid.hpp"

#include <stdexcept>
#include <utility>

namespace pboreg {

int refine_lattice_size(int a) {
    if (a < 2) throw std::invalid_argument("refine_lattice_size: lattice size must be at least 2");
    return 2 * a - 1;
}

PyramidSchedule make_schedule(int image_w, int image_h, int n_levels, int base_k, int base_l,
                              int generations, int population) {
    if (n_levels < 1) throw std::invalid_argument("make_schedule: need at least one level");
    if (base_k < 2 || base_l < 2)
        throw std::invalid_argument("make_schedule: base lattice must be at least 2x2");
    if (generations < 0) throw std::invalid_argument("make_schedule: negative generation count");
    if (population < 1) throw std::invalid_argument("make_schedule: population must be positive");
    const int min_dim = 1 << (n_levels - 1);
    if (image_w < min_dim || image_h < min_dim)
        throw std::invalid_argument("make_schedule: image too small for pyramid depth");

    PyramidSchedule sched;
    sched.base_k = base_k;
    sched.base_l = base_l;
    sched.levels.resize(static_cast<std::size_t>(n_levels));
    int w = image_w, h = image_h;
    for (int n = n_levels - 1; n >= 0; --n) {
        sched.levels[static_cast<std::size_t>(n)].image_w = w;
        sched.levels[static_cast<std::size_t>(n)].image_h = h;
        w /= 2;
        h /= 2;
    }
    int k = base_k, l = base_l;
    for (int n = 0; n < n_levels; ++n) {
        LevelSpec& ls = sched.levels[static_cast<std::size_t>(n)];
        ls.k = k;
        ls.l = l;
        ls.generations = generations;
        ls.population = population;
        k = refine_lattice_size(k);
        l = refine_lattice_size(l);
    }
    return sched;
}

namespace {

GrayImage box_downsample(const GrayImage& src) {
    GrayImage out = GrayImage::filled(src.w / 2, src.h / 2, 0.0);
    for (int y = 0; y < out.h; ++y)
        for (int x = 0; x < out.w; ++x)
            out.at(x, y) = 0.25 * (src.at(2 * x, 2 * y) + src.at(2 * x + 1, 2 * y) +
                                   src.at(2 * x, 2 * y + 1) + src.at(2 * x + 1, 2 * y + 1));
    return out;
}

}  // namespace

std::vector<GrayImage> build_pyramid(const GrayImage& img, int levels) {
    if (levels < 1) throw std::invalid_argument("build_pyramid: need at least one level");
    const int min_dim = 1 << (levels - 1);
    if (img.w < min_dim || img.h < min_dim)
        throw std::invalid_argument("build_pyramid: image too small for pyramid depth");
    std::vector<GrayImage> pyramid(static_cast<std::size_t>(levels));
    pyramid[static_cast<std::size_t>(levels - 1)] = img;
    for (int n = levels - 2; n >= 0; --n)
        pyramid[static_cast<std::size_t>(n)] = box_downsample(pyramid[static_cast<std::size_t>(n + 1)]);
    return pyramid;
}

ControlLattice inherit(const ControlLattice& coarse, int coarse_w, int coarse_h,
                       const LatticeSpec& fine) {
    if (coarse.spec.image_w != coarse_w || coarse.spec.image_h != coarse_h)
        throw std::invalid_argument("inherit: coarse lattice spec does not match stated dimensions");
    const double sx = static_cast<double>(fine.image_w) / coarse_w;
    const double sy = static_cast<double>(fine.image_h) / coarse_h;

    ControlLattice out = ControlLattice::zero(fine);
    for (int j = -1; j <= fine.l; ++j)
        for (int i = -1; i <= fine.k; ++i) {
            const Vec2 fine_pos{i * fine.dx(), j * fine.dy()};
            const Vec2 coarse_pos = clamp_to_domain({fine_pos.x / sx, fine_pos.y / sy}, coarse.spec);
            const Vec2 disp = map_point_clamped(coarse_pos, coarse) - coarse_pos;
            out.at(i, j) = {sx * disp.x, sy * disp.y};
        }
    return out;
}

namespace {

Population make_level_population(int size, const LatticeSpec& spec, const EncodingSpec& enc,
                                 std::uint64_t level_seed) {
    const int genome_bits = spec.node_count() * 2 * enc.bits_per_param;
    Population pop =
        make_random_population(size, genome_bits, enc.bits_per_param, level_seed);
    // Slot 0 carries the inherited solution: the residual closest to zero.
    const std::vector<Vec2> zeros(static_cast<std::size_t>(spec.node_count()), Vec2{});
    pop.individuals[0].genome = encode_genome(zeros, enc);
    pop.rng_seed = derive_seed(level_seed, {kTagEngine});
    return pop;
}

ControlLattice add_residual(const ControlLattice& baseline, const std::vector<Vec2>& residual) {
    ControlLattice out = baseline;
    for (std::size_t i = 0; i < out.d.size(); ++i) out.d[i] = out.d[i] + residual[i];
    return out;
}

}  // namespace

CoarseToFineResult run_coarse_to_fine(const GrayImage& source, const GrayImage& target,
                                      const PyramidSchedule& sched, const EncodingSpec& enc,
                                      std::uint64_t seed, const EngineFn& engine, int threads) {
    if (source.w != target.w || source.h != target.h)
        throw std::invalid_argument("run_coarse_to_fine: source and target dimensions differ");
    if (sched.levels.empty()) throw std::invalid_argument("run_coarse_to_fine: empty schedule");
    const LevelSpec& finest = sched.levels.back();
    if (finest.image_w != source.w || finest.image_h != source.h)
        throw std::invalid_argument("run_coarse_to_fine: schedule does not end at the input size");

    const int n_levels = static_cast<int>(sched.levels.size());
    const std::vector<GrayImage> src_pyr = build_pyramid(source, n_levels);
    const std::vector<GrayImage> tgt_pyr = build_pyramid(target, n_levels);

    CoarseToFineResult result;
    ControlLattice baseline;
    for (int lev = 0; lev < n_levels; ++lev) {
        const LevelSpec& ls = sched.levels[static_cast<std::size_t>(lev)];
        const LatticeSpec spec{ls.image_w, ls.image_h, ls.k, ls.l};
        const GrayImage& src = src_pyr[static_cast<std::size_t>(lev)];
        const GrayImage& tgt = tgt_pyr[static_cast<std::size_t>(lev)];
        if (src.w != spec.image_w || src.h != spec.image_h)
            throw std::invalid_argument("run_coarse_to_fine: schedule dims disagree with pyramid");

        if (lev == 0) baseline = ControlLattice::zero(spec);
        ObjectiveFn obj = WarpSadObjective(src, tgt, spec, enc, baseline);

        const std::uint64_t level_seed =
            derive_seed(seed, {kTagLevel, static_cast<std::uint64_t>(lev)});
        Population pop = make_level_population(ls.population, spec, enc, level_seed);

        LoopResult lr = engine(std::move(pop), ls.generations, obj, threads);
        evaluate_population(lr.population, obj, threads);  // covers the zero-generation case
        const Individual& elite = lr.population.individuals[elite_index(lr.population)];
        const ControlLattice total = add_residual(baseline, decode_genome(elite.genome, enc));

        result.level_logs.push_back({lev, spec, std::move(lr.log)});
        result.level_lattices.push_back(total);

        if (lev + 1 < n_levels) {
            const LevelSpec& nls = sched.levels[static_cast<std::size_t>(lev + 1)];
            const LatticeSpec next{nls.image_w, nls.image_h, nls.k, nls.l};
            baseline = inherit(total, spec.image_w, spec.image_h, next);
        } else {
            result.lattice = total;
        }
    }
    return result;
}

}  // namespace pboreg
