#include "pboreg/synthbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pboreg/csv.hpp"
#include "pboreg/image_io.hpp"
#include "pboreg/util.hpp"

namespace pboreg {

GrayImage make_blob_texture(int w, int h, std::uint64_t seed) {
    GrayImage img = GrayImage::filled(w, h, 0.0);
    Rng rng(seed);
    const int n_blobs = std::max(12, w * h / 400);
    const double min_dim = static_cast<double>(std::min(w, h));

    struct Blob {
        double cx, cy, inv_two_sigma2, amplitude;
    };
    std::vector<Blob> blobs(static_cast<std::size_t>(n_blobs));
    for (Blob& b : blobs) {
        b.cx = rng.uniform01() * w;
        b.cy = rng.uniform01() * h;
        const double sigma = min_dim * (0.03 + 0.12 * rng.uniform01());
        b.inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
        b.amplitude = 2.0 * rng.uniform01() - 1.0;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 0.0;
            for (const Blob& b : blobs) {
                const double dx = x - b.cx;
                const double dy = y - b.cy;
                v += b.amplitude * std::exp(-(dx * dx + dy * dy) * b.inv_two_sigma2);
            }
            img.at(x, y) = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }

    if (hi - lo < 1e-12) return GrayImage::filled(w, h, 0.5);
    for (double& v : img.data) v = (v - lo) / (hi - lo);
    return img;
}

std::vector<Vec2> landmark_grid(int w, int h) {
    std::vector<Vec2> points;
    points.reserve(25);
    for (int b = 0; b < 5; ++b)
        for (int a = 0; a < 5; ++a)
            points.push_back({(a + 1) * w / 6.0, (b + 1) * h / 6.0});
    return points;
}

SyntheticCase generate_case(std::uint64_t seed, const GrayImage& source, int gt_k, int gt_l,
                            double gt_radius) {
    if (gt_radius < 0.0) throw std::invalid_argument("generate_case: negative deformation radius");
    const LatticeSpec spec{source.w, source.h, gt_k, gt_l};
    SyntheticCase cse;
    cse.gt = ControlLattice::zero(spec);

    Rng rng(derive_seed(seed, {kTagDeform}));
    for (Vec2& d : cse.gt.d) {
        const double angle = 2.0 * std::numbers::pi * rng.uniform01();
        const double rho = gt_radius * std::sqrt(rng.uniform01());
        d = {rho * std::cos(angle), rho * std::sin(angle)};
    }

    cse.source = source;
    cse.target = warp(source, cse.gt);
    cse.landmarks = landmark_grid(source.w, source.h);
    return cse;
}

double landmark_rmse(const ControlLattice& estimated, const ControlLattice& gt,
                     std::span<const Vec2> landmarks) {
    if (estimated.spec.image_w != gt.spec.image_w || estimated.spec.image_h != gt.spec.image_h)
        throw std::invalid_argument("landmark_rmse: lattices cover different image dimensions");
    if (landmarks.empty()) throw std::invalid_argument("landmark_rmse: empty landmark list");
    double acc = 0.0;
    for (const Vec2& p : landmarks) {
        const Vec2 diff = map_point(p, estimated) - map_point(p, gt);
        acc += diff.x * diff.x + diff.y * diff.y;
    }
    return std::sqrt(acc / static_cast<double>(landmarks.size()));
}

LoopResult run_baseline_ga(Population initial, const BaselineGAParams& params, int generations,
                           const ObjectiveFn& objective, int threads) {
    if (initial.individuals.empty())
        throw std::invalid_argument("run_baseline_ga: empty population");
    constexpr double kEpsilon = 1e-6;
    LoopResult out;
    out.population = std::move(initial);
    Population& pop = out.population;
    const std::uint64_t master = pop.rng_seed;
    const std::size_t n = pop.size();
    const std::size_t genome_len = pop.individuals[0].genome.bits.size();
    const double mutation = params.mutation_rate >= 0.0
                                ? params.mutation_rate
                                : 1.0 / static_cast<double>(std::max<std::size_t>(genome_len, 1));

    for (int i = 0; i < generations; ++i) {
        evaluate_population(pop, objective, threads);
        normalize_population_fitness(pop);
        out.log.push_back({i, *pop.individuals[elite_index(pop)].raw_objective,
                           [&] {
                               double acc = 0.0;
                               for (const Individual& ind : pop.individuals)
                                   acc += *ind.raw_objective;
                               return acc / static_cast<double>(n);
                           }(),
                           0.0, pop.size() >= 2 ? hamming_diversity(pop) : 0.0});

        Rng rng(derive_seed(master, {kTagBaseline, static_cast<std::uint64_t>(i)}));

        std::vector<double> cumulative(n);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += pop.individuals[j].norm_fitness + kEpsilon;
            cumulative[j] = acc;
        }
        auto spin = [&]() -> const Individual& {
            const double r = rng.uniform01() * acc;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
            return pop.individuals[std::min<std::size_t>(
                static_cast<std::size_t>(it - cumulative.begin()), n - 1)];
        };

        Population next;
        next.generation = pop.generation + 1;
        next.rng_seed = pop.rng_seed;
        next.individuals.reserve(n);
        next.individuals.push_back(pop.individuals[elite_index(pop)]);

        while (next.individuals.size() < n) {
            Genome c1 = spin().genome;
            Genome c2 = spin().genome;
            if (genome_len >= 2 && rng.bernoulli(params.crossover_rate)) {
                const std::size_t cut = 1 + rng.index(genome_len - 1);
                for (std::size_t b = cut; b < genome_len; ++b) std::swap(c1.bits[b], c2.bits[b]);
            }
            for (Genome* child : {&c1, &c2})
                for (std::uint8_t& bit : child->bits)
                    if (rng.bernoulli(mutation)) bit ^= 1u;
            next.individuals.push_back({std::move(c1), std::nullopt, 0.0});
            if (next.individuals.size() < n)
                next.individuals.push_back({std::move(c2), std::nullopt, 0.0});
        }
        pop = std::move(next);
    }
    return out;
}

EngineFn make_baseline_engine(const BaselineGAParams& params) {
    return [params](Population initial, int generations, const ObjectiveFn& objective,
                    int threads) {
        return run_baseline_ga(std::move(initial), params, generations, objective, threads);
    };
}

OracleResult exhaustive_oracle(const ObjectiveFn& objective, int genome_length,
                               int bits_per_param) {
    if (genome_length < 1 || genome_length > 20)
        throw std::invalid_argument("exhaustive_oracle: genome length must be in [1, 20]");
    Genome g;
    g.bits_per_param = bits_per_param;
    g.bits.resize(static_cast<std::size_t>(genome_length));

    OracleResult best;
    best.objective = std::numeric_limits<double>::infinity();
    const std::uint64_t count = 1ull << genome_length;
    for (std::uint64_t v = 0; v < count; ++v) {
        for (int b = 0; b < genome_length; ++b)
            g.bits[static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>((v >> (genome_length - 1 - b)) & 1u);
        const double obj = objective(g);
        if (obj < best.objective) {  // strict: ties stay at the lowest value
            best.objective = obj;
            best.genome = g;
        }
    }
    return best;
}

namespace {

ControlLattice identity_lattice(const LatticeSpec& spec) { return ControlLattice::zero(spec); }

void draw_marker(GrayImage& img, Vec2 p, double value) {
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    for (int d = -2; d <= 2; ++d) {
        const int hx = cx + d;
        if (hx >= 0 && hx < img.w && cy >= 0 && cy < img.h) img.at(hx, cy) = value;
        const int vy = cy + d;
        if (cx >= 0 && cx < img.w && vy >= 0 && vy < img.h) img.at(cx, vy) = value;
    }
}

std::vector<DiversityRow> zip_diversity(const LevelLog& pbo, const LevelLog& baseline) {
    std::vector<DiversityRow> rows;
    const std::size_t n = std::min(pbo.rows.size(), baseline.rows.size());
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        rows.push_back({pbo.rows[i].generation, pbo.rows[i].mean_hamming,
                        baseline.rows[i].mean_hamming});
    return rows;
}

void write_bench_outputs(const BenchReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    {
        std::ofstream f(out / "report.csv");
        if (!f) throw IoError("cannot write " + (out / "report.csv").string());
        f << "case_id,rmse_pbo,rmse_baseline,rmse_identity,ok,error\n";
        for (const BenchCaseResult& c : report.cases) {
            f << c.case_id << ',' << format_double(c.rmse_pbo) << ','
              << format_double(c.rmse_baseline) << ',' << format_double(c.rmse_identity) << ','
              << (c.ok ? 1 : 0) << ',' << c.error << '\n';
        }
    }
    {
        // Wall times live outside report.csv so that reruns with one seed
        // produce byte-identical reports.
        std::ofstream f(out / "timings.csv");
        f << "case_id,pbo_seconds,baseline_seconds\n";
        for (const BenchCaseResult& c : report.cases)
            f << c.case_id << ',' << format_double(c.runtime_pbo_s) << ','
              << format_double(c.runtime_baseline_s) << '\n';
    }
    for (const BenchCaseResult& c : report.cases) {
        if (!c.ok) continue;
        const std::string id = std::to_string(c.case_id);
        {
            std::ofstream f(out / ("diversity_" + id + ".csv"));
            f << "generation,pbo_diversity,baseline_diversity\n";
            for (const DiversityRow& r : c.diversity)
                f << r.generation << ',' << format_double(r.pbo) << ','
                  << format_double(r.baseline) << '\n';
        }
        for (const LevelLog& log : c.pbo_logs)
            write_generation_log(
                (out / ("case" + id + "_pbo_level" + std::to_string(log.level) + ".csv")).string(),
                log.rows);
        for (const LevelLog& log : c.baseline_logs)
            write_generation_log(
                (out / ("case" + id + "_baseline_level" + std::to_string(log.level) + ".csv"))
                    .string(),
                log.rows);
        save_image(render_overlay(c.synthetic, c.est_pbo),
                   (out / ("overlay_" + id + ".png")).string());
    }
}

}  // namespace

GrayImage render_overlay(const SyntheticCase& cse, const ControlLattice& estimated) {
    GrayImage img = cse.target;
    for (const Vec2& p : cse.landmarks) {
        draw_marker(img, map_point(p, cse.gt), 1.0);
        draw_marker(img, map_point(p, estimated), 0.0);
    }
    return img;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
    if (cfg.n_cases < 0) throw std::invalid_argument("run_benchmark: negative case count");
    BenchReport report;
    report.cases.resize(static_cast<std::size_t>(cfg.n_cases));

    parallel_for(static_cast<std::size_t>(cfg.n_cases), cfg.threads, [&](std::size_t idx) {
        BenchCaseResult& r = report.cases[idx];
        r.case_id = static_cast<int>(idx);
        try {
            const std::uint64_t case_seed =
                derive_seed(cfg.seed, {kTagCase, static_cast<std::uint64_t>(idx)});
            const GrayImage source =
                make_blob_texture(cfg.image_w, cfg.image_h, derive_seed(case_seed, {kTagTexture}));
            r.synthetic = generate_case(case_seed, source, cfg.gt_k, cfg.gt_l, cfg.gt_radius);
            r.synthetic.case_id = r.case_id;

            const PyramidSchedule sched =
                make_schedule(cfg.image_w, cfg.image_h, cfg.levels, cfg.base_k, cfg.base_l,
                              cfg.generations, cfg.population);

            using clock = std::chrono::steady_clock;
            const auto t0 = clock::now();
            const CoarseToFineResult pbo_run = run_coarse_to_fine(
                r.synthetic.source, r.synthetic.target, sched, cfg.enc,
                derive_seed(case_seed, {kTagPboRun}),
                make_pbo_engine(cfg.pbo, cfg.anneal_e, cfg.p_min), 1);
            const auto t1 = clock::now();
            const CoarseToFineResult base_run = run_coarse_to_fine(
                r.synthetic.source, r.synthetic.target, sched, cfg.enc,
                derive_seed(case_seed, {kTagBaselineRun}),
                make_baseline_engine(cfg.baseline), 1);
            const auto t2 = clock::now();

            r.runtime_pbo_s = std::chrono::duration<double>(t1 - t0).count();
            r.runtime_baseline_s = std::chrono::duration<double>(t2 - t1).count();
            r.est_pbo = pbo_run.lattice;
            r.est_baseline = base_run.lattice;
            r.rmse_pbo = landmark_rmse(pbo_run.lattice, r.synthetic.gt, r.synthetic.landmarks);
            r.rmse_baseline =
                landmark_rmse(base_run.lattice, r.synthetic.gt, r.synthetic.landmarks);
            r.rmse_identity = landmark_rmse(identity_lattice(r.synthetic.gt.spec), r.synthetic.gt,
                                            r.synthetic.landmarks);
            r.pbo_logs = pbo_run.level_logs;
            r.baseline_logs = base_run.level_logs;
            r.diversity = zip_diversity(r.pbo_logs.back(), r.baseline_logs.back());
            r.ok = true;
        } catch (const std::exception& ex) {
            r.ok = false;
            r.error = ex.what();
        }
    });

    double acc = 0.0, acc_id = 0.0;
    int n_ok = 0;
    for (const BenchCaseResult& c : report.cases) {
        if (!c.ok) continue;
        acc += c.rmse_pbo;
        acc_id += c.rmse_identity;
        ++n_ok;
    }
    if (n_ok > 0) {
        report.mean_rmse = acc / n_ok;
        report.mean_identity_rmse = acc_id / n_ok;
        double var = 0.0;
        for (const BenchCaseResult& c : report.cases)
            if (c.ok) var += (c.rmse_pbo - report.mean_rmse) * (c.rmse_pbo - report.mean_rmse);
        report.std_rmse = std::sqrt(var / n_ok);
    }

    if (!cfg.out_dir.empty()) write_bench_outputs(report, cfg.out_dir);
    return report;
}

}  // namespace pboreg
