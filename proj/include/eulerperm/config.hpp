#pragma once

#include <string>

#include <json.hpp>

#include "eulerperm/solver.hpp"

namespace eulerperm {

/// JSON keys: n, L, dt, cfl_safety, t_end, dealias, diagnostics_every,
/// snapshot_every, reproject_every, mode, family, initial_file and a nested
/// "params" object (amplitude, width, ring_radius, ring_offset, perturbation,
/// mirror).  Absent keys keep their defaults; unknown keys and wrong types
/// throw InvalidInput.  The result is not validated.
SolverConfig config_from_json(const nlohmann::json& j, SolverConfig base = {});
SolverConfig load_config(const std::string& path);
nlohmann::json config_to_json(const SolverConfig& cfg);

}  // namespace eulerperm
