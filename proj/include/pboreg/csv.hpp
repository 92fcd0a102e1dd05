#pragma once

#include <span>
#include <string>
#include <vector>

#include "pboreg/geometry.hpp"
#include "pboreg/pbo.hpp"

namespace pboreg {

/// Engine log schema: generation,best_sad,mean_sad,p_ann,mean_hamming.
void write_generation_log(const std::string& path, std::span<const GenerationLogRow> rows);

/// Landmark schema: x,y.
void write_landmarks(const std::string& path, std::span<const Vec2> points);
std::vector<Vec2> read_landmarks(const std::string& path);

/// Minimal CSV reader for tests and tooling: rows of comma-split cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Fixed-precision decimal formatting used by every CSV writer, so outputs
/// are reproducible byte for byte.
std::string format_double(double v);

}  // namespace pboreg
