// Command-line front end: scenario execution, preset listing, config
// validation. Exit codes: 0 success, 2 schema violation, 3 dispersive
// validity failure, 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcoupler/evolve.hpp"
#include "dcoupler/hamiltonians.hpp"
#include "dcoupler/scenario.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitDispersive = 3;
constexpr int kExitNumerical = 4;

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw dcoupler::SchemaError("cannot read config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw dcoupler::SchemaError("config is not valid JSON: " +
                                std::string(e.what()));
  }
}

int run_command(const std::string& preset, const std::string& config_path,
                const dcoupler::RunOptions& options) {
  nlohmann::json config;
  if (!preset.empty())
    config = dcoupler::preset_config(preset);
  else
    config = load_config(config_path);
  const dcoupler::ScenarioResult result =
      dcoupler::run_scenario(config, options);
  for (const auto& [k, v] : result.summary) std::cout << k << "=" << v << "\n";
  for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-coupler simulation toolkit"};
  app.require_subcommand(1);

  std::string preset, config_path, output_dir;
  int jobs = 1, points = 0;
  bool plot = false;

  auto* run = app.add_subcommand("run", "run a scenario preset or config");
  auto* preset_opt = run->add_option("--preset", preset, "built-in preset name");
  auto* config_opt = run->add_option("--config", config_path, "path to a JSON config");
  preset_opt->excludes(config_opt);
  run->add_option("--output-dir", output_dir, "artifact directory");
  run->add_option("--jobs", jobs, "parallel workers for sweep points")
      ->check(CLI::PositiveNumber);
  run->add_option("--points", points, "override sweep point count");
  run->add_flag("--plot", plot, "also write an SVG population plot");

  auto* list = app.add_subcommand("list-presets", "list built-in presets");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a JSON config");
  validate->add_option("--config", validate_path, "path to a JSON config")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& info : dcoupler::list_presets())
        std::cout << info.name << "  " << info.description << "\n";
      return 0;
    }
    if (validate->parsed()) {
      dcoupler::validate_config(load_config(validate_path));
      std::cout << "ok\n";
      return 0;
    }
    if (preset.empty() && config_path.empty()) {
      std::cerr << "run requires --preset or --config\n";
      return kExitSchema;
    }
    dcoupler::RunOptions options;
    if (!output_dir.empty()) {
      options.output_dir = output_dir;
    } else if (const char* env = std::getenv("DCOUPLER_OUTPUT_DIR")) {
      options.output_dir = env;
    }
    options.jobs = jobs;
    options.plot = plot;
    if (points > 0) options.points_override = points;
    return run_command(preset, config_path, options);
  } catch (const dcoupler::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const dcoupler::DispersiveError& e) {
    std::cerr << "dispersive validity error: " << e.what() << "\n";
    return kExitDispersive;
  } catch (const dcoupler::SingularDenominator& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const dcoupler::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
