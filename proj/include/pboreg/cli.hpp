#pragma once

#include <cstdint>
#include <string>

#include "pboreg/synthbench.hpp"

namespace pboreg {

/// Everything a run needs, validated before any compute starts.
struct RunConfig {
    // Variation operator
    double w_max = 0.5;
    double s_bit = 2.0;
    double s_fit = 0.3;

    // Annealing selection
    double anneal_e = 1.0;
    double p_min = 0.1;

    // Loop sizes
    int generations = 200;
    int population = 50;

    // Encoding
    int bits_per_param = 5;
    double radius = 3.0;

    // Pyramid
    int levels = 3;
    int base_k = 3;
    int base_l = 3;

    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = ".";

    // Benchmark / synthetic generation
    int cases = 10;
    int bench_w = 128;
    int bench_h = 128;
    int gt_k = 5;
    int gt_l = 5;
    double gt_radius = 8.0;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    EncodingSpec encoding() const { return {bits_per_param, radius}; }
    PBOParams pbo_params() const { return {w_max, s_bit, s_fit}; }
    BenchConfig bench_config() const;
};

// Subcommand bodies. All throw: ConfigError for invalid configuration,
// IoError for file problems, std::runtime_error for runtime failures.
void cmd_estimate(const RunConfig& cfg, const std::string& source_path,
                  const std::string& target_path);
void cmd_warp(const std::string& source_path, const std::string& lattice_path,
              const std::string& out_path);
void cmd_synth(const RunConfig& cfg, const std::string& image_path);
void cmd_bench(const RunConfig& cfg);

/// Full command-line surface. Returns the process exit code:
/// 0 success, 2 usage/config error, 3 I/O error, 4 runtime failure.
int run_cli(int argc, const char* const* argv);

}  // namespace pboreg
