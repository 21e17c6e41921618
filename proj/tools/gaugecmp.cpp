#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gaugecmp/config.hpp"
#include "gaugecmp/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare minimal and dipole light-matter couplings for hydrogen-like atoms"};
  std::string scenario_name, config_path, preset, out_path;
  unsigned workers = 0;
  app.add_option("scenario", scenario_name, "vacuum-excitation | emission | coherent | cutoff-sweep | gauge-audit")
      ->required();
  app.add_option("--config", config_path, "key = value config file with [section] groups");
  app.add_option("--preset", preset, "fig1 | fig2 | fig5 | fig6 | fig7 | fig8 | fig9");
  app.add_option("--out", out_path, "output path (stdout when omitted)");
  app.add_option("--workers", workers, "worker threads for grid points")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  gaugecmp::RunConfig cfg;
  try {
    const auto scenario = gaugecmp::parse_scenario(scenario_name);
    if (!preset.empty()) {
      cfg = gaugecmp::figure_preset(preset);
      if (cfg.scenario != scenario)
        throw gaugecmp::ConfigError("preset " + preset + " is a " + gaugecmp::to_string(cfg.scenario) + " run", 0,
                                    "--preset");
    } else if (config_path.empty()) {
      throw gaugecmp::ConfigError("either --config or --preset is required");
    }
    cfg.scenario = scenario;
    if (!config_path.empty()) cfg = gaugecmp::apply_config(gaugecmp::IniDocument::load(config_path), cfg);
    if (!out_path.empty()) cfg.out = out_path;
    if (workers > 0) cfg.workers = workers;
    cfg.validate();
  } catch (const gaugecmp::ConfigError& e) {
    std::cerr << "gaugecmp: " << e.diagnostic() << "\n";
    return kConfigError;
  }

  gaugecmp::ScenarioOutput result;
  try {
    result = gaugecmp::run_scenario(cfg);
  } catch (const gaugecmp::ConfigError& e) {
    std::cerr << "gaugecmp: " << e.diagnostic() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "gaugecmp: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }

  if (cfg.out.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "gaugecmp: cannot write '" << cfg.out << "'\n";
      return kConfigError;
    }
    f << result.text;
  }
  if (result.failed_rows > 0) std::cerr << "gaugecmp: " << result.failed_rows << " row(s) failed, see status column\n";
  if (result.audit_failed) std::cerr << "gaugecmp: gauge audit reported failures\n";
  return result.numerical_failure() ? kNumericalFailure : kOk;
}
