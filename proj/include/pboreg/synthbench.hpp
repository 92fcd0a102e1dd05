#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pboreg/pyramid.hpp"

namespace pboreg {

struct SyntheticCase {
    int case_id = 0;
    ControlLattice gt;
    GrayImage source;
    GrayImage target;  // warp(source, gt)
    std::vector<Vec2> landmarks;
};

/// Procedural smooth texture: sum of random Gaussian blobs, min-max
/// normalized to [0, 1].
GrayImage make_blob_texture(int w, int h, std::uint64_t seed);

/// Deterministic 5x5 interior evaluation grid.
std::vector<Vec2> landmark_grid(int w, int h);

/// Random ground-truth deformation: node displacements drawn uniformly on
/// the disk of radius gt_radius, target produced by warping the source.
SyntheticCase generate_case(std::uint64_t seed, const GrayImage& source, int gt_k, int gt_l,
                            double gt_radius);

/// Root-mean-square distance between the two transforms at the landmarks.
double landmark_rmse(const ControlLattice& estimated, const ControlLattice& gt,
                     std::span<const Vec2> landmarks);

/// Conventional GA used as the comparison engine: roulette parent selection,
/// one-point crossover, per-bit mutation, elitism of one.
struct BaselineGAParams {
    double crossover_rate = 0.9;
    double mutation_rate = -1.0;  // < 0 means 1/genome_length
};

LoopResult run_baseline_ga(Population initial, const BaselineGAParams& params, int generations,
                           const ObjectiveFn& objective, int threads = 1);

EngineFn make_baseline_engine(const BaselineGAParams& params = {});

struct OracleResult {
    Genome genome;
    double objective = 0.0;
};

/// Enumerates every bit string up to 20 bits and returns the global optimum
/// (ties to the lowest unsigned value).
OracleResult exhaustive_oracle(const ObjectiveFn& objective, int genome_length, int bits_per_param);

struct DiversityRow {
    int generation = 0;
    double pbo = 0.0;
    double baseline = 0.0;
};

struct BenchCaseResult {
    int case_id = 0;
    bool ok = false;
    std::string error;
    double rmse_pbo = 0.0;
    double rmse_baseline = 0.0;
    double rmse_identity = 0.0;  // zero-lattice transform against ground truth
    double runtime_pbo_s = 0.0;
    double runtime_baseline_s = 0.0;
    std::vector<LevelLog> pbo_logs;
    std::vector<LevelLog> baseline_logs;
    std::vector<DiversityRow> diversity;  // finest level
    SyntheticCase synthetic;
    ControlLattice est_pbo;
    ControlLattice est_baseline;
};

struct BenchConfig {
    int n_cases = 10;
    int image_w = 128;
    int image_h = 128;
    int levels = 3;
    int base_k = 3;
    int base_l = 3;
    int generations = 200;
    int population = 50;
    EncodingSpec enc{5, 3.0};
    PBOParams pbo{};
    double anneal_e = 1.0;
    double p_min = 0.1;
    BaselineGAParams baseline{};
    int gt_k = 5;
    int gt_l = 5;
    double gt_radius = 8.0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir;  // empty: keep results in memory only
};

struct BenchReport {
    std::vector<BenchCaseResult> cases;
    double mean_rmse = 0.0;
    double std_rmse = 0.0;
    double mean_identity_rmse = 0.0;
};

/// Runs the estimator and the baseline GA through the same coarse-to-fine
/// harness on n_cases synthetic deformations. A failing case is recorded in
/// its row; the remaining cases still run. When out_dir is set, writes
/// report.csv, timings.csv, per-case diversity CSVs, per-level logs, and
/// landmark overlay images there.
BenchReport run_benchmark(const BenchConfig& cfg);

/// Target image with the landmarks plotted under the ground-truth transform
/// (white markers) and the estimated transform (black markers).
GrayImage render_overlay(const SyntheticCase& cse, const ControlLattice& estimated);

}  // namespace pboreg
