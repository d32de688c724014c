#pragma once

#include <filesystem>
#include <iosfwd>

#include "spinsim/config.hpp"

namespace spinsim {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes shared by the runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

/// Execute one experiment: one cell per (seed, sweep point), parallelized over
/// `workers` threads, results written in canonical key order so output bytes
/// never depend on the worker count. BLAS threading is pinned to 1 for the
/// same reason. Emits the CSVs plus manifest.json; row-level failures land in
/// errors.csv (exit 3 with fail_fast, exit 0 otherwise).
int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                   int workers, bool fail_fast, std::ostream& log);

/// Schema check, dimension estimate and hierarchy report; no diagonalization.
/// Returns kExitOk / kExitConfigError.
int validate_config(const ExperimentConfig& config, std::ostream& out);

}  // namespace spinsim
