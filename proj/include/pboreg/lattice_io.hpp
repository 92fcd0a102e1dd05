#pragma once

#include <string>

#include "pboreg/ffd.hpp"

namespace pboreg {

/// Lattice file schema:
///   {"spec": {"w":, "h":, "k":, "l":}, "displacements": [[dx, dy], ...]}
/// with displacements row-major from node index (-1, -1). Writing is
/// canonical, so write -> read -> write is byte-identical.
void save_lattice(const ControlLattice& lat, const std::string& path);

/// Throws IoError with line/field diagnostics on malformed input.
ControlLattice load_lattice(const std::string& path);

std::string lattice_to_json(const ControlLattice& lat);
ControlLattice lattice_from_json(const std::string& text);

}  // namespace pboreg
