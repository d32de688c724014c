#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinsim/units.hpp"

namespace spinsim {

inline constexpr int kConfigSchemaVersion = 1;

/// Declarative description of one experiment run. Parsed from a JSON file
/// (see README for the schema); round-trips losslessly through to_json /
/// from_json.
struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  std::string experiment;  // spectrum | sweep-omega | rabi | sweep-distance |
                           // error-budget | validate-truncation

  int n_spins = 100;
  double diameter_nm = 20.0;
  double min_separation_nm = 1.0;
  int m_max = 2;
  std::vector<std::uint64_t> seeds;
  PhysicalParams params = default_nv_params();

  std::vector<double> omega_grid_mhz;  // sweep-omega
  double r_nm = 100.0;                 // rabi
  std::vector<double> r_grid_nm;       // sweep-distance
  std::array<double, 3> qubit_direction{1.0, 0.0, 0.0};
  double t_max_us = 2000.0;
  int n_steps = 2000;
  bool bare_vacuum = false;
  bool emit_traces = true;  // rabi only; sweeps emit summaries

  std::size_t dense_cap = 6000;
  std::size_t dimension_cap = 200000;
  double n_c_floor = 10.0;

  // error-budget rows; evaluated against params.t2_us and epsilon
  struct BudgetRow {
    double t_pi_us = 0.0;
    int n_swaps = 4;
    std::string mode = "sqrtN";  // sqrtN | N
  };
  std::vector<BudgetRow> budget;
  double epsilon = 1e-2;

  int truncation_m_high = 3;  // validate-truncation

  std::string to_json_string() const;  // canonical (sorted keys)
  static ExperimentConfig from_json_string(const std::string& text);
  static ExperimentConfig from_json_file(const std::filesystem::path& path);

  /// Every violated constraint, empty when runnable.
  std::vector<std::string> validate() const;

  /// FNV-1a of the canonical serialization: changes iff content changes.
  std::uint64_t content_hash() const;

  /// Basis dimension the chosen experiment will allocate (includes the qubit
  /// for rabi / sweep-distance).
  std::size_t predicted_dimension() const;
};

}  // namespace spinsim
