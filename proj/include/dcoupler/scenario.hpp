#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcoupler/model.hpp"

namespace dcoupler {

/// Configuration violates the scenario schema (unknown key, wrong type,
/// out-of-range value, missing required field).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string output_dir = ".";
  int jobs = 1;
  bool plot = false;
  std::optional<int> points_override;  ///< sweep point-count override
};

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Built-in scenario presets, sorted by name.
std::vector<PresetInfo> list_presets();
nlohmann::json preset_config(const std::string& name);

/// Validates a scenario configuration against the frozen schema; throws
/// SchemaError with a path-qualified message on the first violation.
void validate_config(const nlohmann::json& config);

/// The coupler model encoded by a validated dynamics configuration.
CouplerModel model_from_config(const nlohmann::json& config);

struct ScenarioResult {
  std::vector<std::pair<std::string, std::string>> summary;  ///< ordered
  std::vector<std::string> files;

  std::string get(const std::string& key) const;
};

/// Runs a validated configuration and writes its artifacts (CSV time series
/// or sweep table, key=value summary, optional SVG plot) under
/// options.output_dir. Deterministic: identical configs produce
/// byte-identical files.
ScenarioResult run_scenario(const nlohmann::json& config,
                            const RunOptions& options);

}  // namespace dcoupler
