#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spinsim/geometry.hpp"
#include "spinsim/spectrum.hpp"
#include "spinsim/sparse_op.hpp"
#include "spinsim/state.hpp"
#include "spinsim/units.hpp"

namespace spinsim {

/// Time series of the qubit excitation probability plus the extracted
/// pi-transfer time. t_pi is the first interpolated local minimum of p_q
/// below 0.5; v_c = 1/(4 t_pi) in ordinary-frequency units (full population
/// transfer of a resonant two-level flip-flop).
struct RabiTrace {
  std::vector<double> times_us;
  std::vector<double> p_q;
  std::optional<double> t_pi_us;
  std::optional<double> v_c_mhz;
  double leaked_norm = 0.0;      // weight dropped when embedding the initial state
  double norm_drift = 0.0;       // max | ||psi|| - 1 | along the trace
  double energy_drift_rel = 0.0; // max relative <H> drift along the trace
};

struct EvolveOptions {
  enum class Method { Auto, Dense, Krylov };
  Method method = Method::Auto;
  double tol = 1e-9;           // Krylov per-step error budget
  std::size_t dense_cap = 6000;
  int max_krylov = 48;
};

/// Propagate psi0 over the grid and record the total weight on `excited_rows`
/// at each time. Auto picks the dense eigendecomposition path up to dense_cap
/// and the Krylov propagator beyond. The grid must start at 0 and ascend.
RabiTrace evolve(const SparseOperator& h, const StateVector& psi0,
                 const std::vector<double>& t_grid_us, const std::vector<int>& excited_rows,
                 const EvolveOptions& opts = {});

/// First interpolated local minimum below 0.5, or nullopt.
std::optional<double> extract_pi_time(const std::vector<double>& times_us,
                                      const std::vector<double>& p);

/// Resonance bookkeeping for the combined system truncated at total
/// excitation count m_max: with the qubit excited the ensemble can only reach
/// m_max - 1 excitations, so the qubit splitting must bridge
/// E_collective(at m_max) - E_vacuum(at m_max - 1); tuning against the same-
/// truncation vacuum would leave a truncation-artifact detuning far larger
/// than the collective coupling.
struct ResonanceInfo {
  double qubit_delta_mhz = 0.0;  // E_c(m_max) - E_vac(m_max - 1)
  double collective_gap_mhz = 0.0;  // E_c - E_vac at m_max (reporting)
  double n_c = 0.0;
  Eigen::VectorXd dressed_vacuum;  // vacuum eigenvector at m_max - 1
  std::shared_ptr<const TruncatedBasis> low_basis;
};

ResonanceInfo tune_qubit_resonance(const SpinGeometry& geom, const PhysicalParams& params,
                                   int m_max, const DiagonalizeOptions& diag = {},
                                   double n_c_floor = 10.0);

struct RabiOptions {
  int m_max = 2;           // total (qubit + ensemble) excitation truncation
  double t_max_us = 2000.0;
  int n_steps = 2000;
  bool bare_vacuum = false;  // start from bare |0> (sensitivity analysis)
  double n_c_floor = 10.0;
  EvolveOptions evolve;
  DiagonalizeOptions diag;
  std::optional<double> qubit_delta_override_mhz;
};

struct RabiResult {
  RabiTrace trace;
  double qubit_delta_mhz = 0.0;
  double n_c = 0.0;         // collective mode of the ensemble-only spectrum
  double distance_nm = 0.0; // qubit-centroid distance
  double angular = 0.0;     // (1 - 3 cos^2) of the qubit-centroid line
  double v_bare_mhz = 0.0;  // j_dd * angular / R^3
  double v_pred_mhz = 0.0;  // sqrt(n_c) * v_bare
};

/// Full qubit <-> ensemble transfer experiment: tune the splitting, start from
/// |1_q> x dressed vacuum, evolve, extract t_pi. The geometry must carry a
/// qubit position.
RabiResult rabi_experiment(const SpinGeometry& geom_with_qubit, const PhysicalParams& params,
                           const RabiOptions& opts = {});

struct DistanceRow {
  double r_nm = 0.0;
  std::optional<double> t_pi_us;
  std::optional<double> v_c_mhz;
  double n_c = 0.0;
  double eff_r_nm = 0.0;  // (sqrt(n_c) j_dd angular / v_c)^(1/3)
  bool near_field = false;
  bool ok = true;
  std::string error;
};

struct DistanceSweep {
  std::vector<DistanceRow> rows;
  std::optional<double> slope;  // log-log d ln(v_c) / d ln(R), far-field rows only
  double n_c = 0.0;
};

/// Rabi experiment per distance with a shared resonance calculation; the time
/// horizon scales with the predicted pi time per row. R_list must span at
/// least a factor 3.
DistanceSweep sweep_distance(const SpinGeometry& geom, const PhysicalParams& params,
                             const std::vector<double>& r_list_nm,
                             const Eigen::Vector3d& direction, const RabiOptions& opts = {});

}  // namespace spinsim
