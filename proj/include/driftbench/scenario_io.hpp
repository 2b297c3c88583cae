#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "driftbench/drift_model.hpp"

namespace driftbench {

/// Scenario config schema (JSON): name, dimension, length,
/// classes[].{name, weight, components[]}, components[].{start, weight,
/// center, stddev, rotation_deg, phases[]}, phases[].{duration, rmoveto,
/// rotate_deg, scale, wchangeto, orbit{pivot, angle_deg}}.
/// rotation_deg / rotate_deg accept a number (rotation in the (0,1) plane)
/// or a list of [axis_a, axis_b, degrees] triples.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Throws ScenarioParseError with field diagnostics on malformed input.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace driftbench
