#ifndef SUPERATOM_CONFIG_HPP
#define SUPERATOM_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "superatom/model.hpp"
#include "superatom/scenarios.hpp"

namespace superatom {

// Array configuration schema (frequencies in GHz, rates in MHz,
// positions in mm). Geometry comes from exactly one of: per-qubit
// position_mm, spacing_mm, or spacing_ratio. A {"preset": "A"|"B1"|"B2",
// "omega0_ghz": f} object is accepted as a shorthand for the measured
// devices. Raises ConfigError naming the offending field.
ArrayModel parse_array_model(const nlohmann::json& j);
nlohmann::json array_model_json(const ArrayModel& model);

// Probe grid: {"start_ghz", "stop_ghz", "points"} or
// {"center_ghz", "span_mhz", "points"}.
GridSpec parse_probe_grid(const nlohmann::json& j);

// Scenario spec schema: scenario name, device (preset or inline array),
// grids, method, convention.
ScenarioSpec parse_scenario_spec(const nlohmann::json& j);
nlohmann::json scenario_spec_json(const ScenarioSpec& spec);

nlohmann::json load_json_file(const std::string& path);

} // namespace superatom

#endif
