// Command-line driver: seeded disorder experiments with CSV output.
//   spinsim <experiment> --config FILE [--workers K] [--out DIR] [--fail-fast]
//   spinsim validate --config FILE

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "spinsim/config.hpp"
#include "spinsim/runner.hpp"

namespace {

int default_workers() {
  if (const char* env = std::getenv("SPINSIM_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinsim: disordered dipolar spin-ensemble simulator"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {"spectrum",       "sweep-omega",
                                                "rabi",           "sweep-distance",
                                                "error-budget",   "validate-truncation"};

  std::string config_path;
  std::string out_dir = ".";
  int workers = default_workers();
  bool fail_fast = false;

  auto add_common = [&](CLI::App* sub, bool with_run_opts) {
    sub->add_option("--config", config_path, "config file (JSON)")->required();
    if (with_run_opts) {
      sub->add_option("--workers", workers, "parallel worker count (env SPINSIM_WORKERS)");
      sub->add_option("--out", out_dir, "output directory");
      sub->add_flag("--fail-fast", fail_fast, "exit 3 on the first cell failure");
    }
  };

  for (const auto& name : experiments) add_common(app.add_subcommand(name), true);
  add_common(app.add_subcommand("validate", "check a config without running"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : spinsim::kExitConfigError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();

  spinsim::ExperimentConfig config;
  try {
    config = spinsim::ExperimentConfig::from_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spinsim::kExitConfigError;
  }

  if (sub == "validate") return spinsim::validate_config(config, std::cout);

  if (config.experiment != sub) {
    std::cerr << "error: config experiment \"" << config.experiment
              << "\" does not match subcommand \"" << sub << "\"\n";
    return spinsim::kExitConfigError;
  }

  try {
    return spinsim::run_experiment(config, out_dir, workers, fail_fast, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spinsim::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spinsim::kExitNumericalError;
  }
}
