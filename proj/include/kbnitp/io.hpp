#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kbnitp/experiment.hpp"

namespace kbnitp::io {

using nlohmann::json;

json to_json(const GroundTruth& world);
GroundTruth ground_truth_from_json(const json& j);

/// Doubles round-trip exactly.
json to_json(const BeliefState& belief);
BeliefState belief_from_json(const json& j);

json to_json(const ScenarioConfig& cfg);
/// Missing fields take ScenarioConfig defaults (base defaults to the grid
/// centre). Unknown keys, wrong types and out-of-range values throw
/// std::invalid_argument naming the field.
ScenarioConfig scenario_from_json(const json& j);

/// A lethality x planner grid over one base scenario.
struct SweepSpec {
  ScenarioConfig base;
  std::vector<double> lethality;
  std::vector<PlannerAlgorithm> planners;
};

void validate(const SweepSpec& spec);
json to_json(const SweepSpec& spec);
SweepSpec sweep_from_json(const json& j);

/// Dispatches on the top-level "kind" field ("scenario" or "sweep").
using ConfigDocument = std::variant<ScenarioConfig, SweepSpec>;
ConfigDocument config_from_json(const json& j);
ConfigDocument load_config(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace kbnitp::io
