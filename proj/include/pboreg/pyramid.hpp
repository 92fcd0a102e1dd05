#pragma once

#include <cstdint>
#include <vector>

#include "pboreg/image.hpp"
#include "pboreg/pbo.hpp"

namespace pboreg {

struct LevelSpec {
    int image_w = 0;
    int image_h = 0;
    int k = 0;
    int l = 0;
    int generations = 0;
    int population = 0;
};

/// Coarse-to-fine plan: image sizes double per level up to the input size,
/// lattice sizes follow a -> 2a - 1.
struct PyramidSchedule {
    std::vector<LevelSpec> levels;  // coarse -> fine
    int base_k = 3;
    int base_l = 3;
};

PyramidSchedule make_schedule(int image_w, int image_h, int n_levels, int base_k, int base_l,
                              int generations, int population);

/// Image pyramid, coarse -> fine. The finest entry is the input; each coarser
/// level is the 2x2 box-filter downsample of the next finer one.
std::vector<GrayImage> build_pyramid(const GrayImage& img, int levels);

/// Lattice refinement rule between levels.
int refine_lattice_size(int a);

/// Baseline lattice for a fine level: each fine node takes the coarse
/// deformation evaluated at its position in coarse coordinates, scaled with
/// the image. Positions outside the coarse domain use the clamped boundary
/// evaluation.
ControlLattice inherit(const ControlLattice& coarse, int coarse_w, int coarse_h,
                       const LatticeSpec& fine);

struct LevelLog {
    int level = 0;
    LatticeSpec spec;
    std::vector<GenerationLogRow> rows;
};

struct CoarseToFineResult {
    ControlLattice lattice;                      // finest-level total deformation
    std::vector<LevelLog> level_logs;
    std::vector<ControlLattice> level_lattices;  // per-level totals
};

/// Runs the generation loop level by level. Each level optimizes a bounded
/// residual on top of the baseline inherited from the previous level; the
/// population is reseeded per level with one near-zero-residual individual
/// plus uniform random bit strings.
CoarseToFineResult run_coarse_to_fine(const GrayImage& source, const GrayImage& target,
                                      const PyramidSchedule& sched, const EncodingSpec& enc,
                                      std::uint64_t seed, const EngineFn& engine, int threads = 1);

}  // namespace pboreg
