#pragma once

#include <string>

// Unit convention, fixed project-wide:
//   energies/frequencies in MHz with h = 1 (ordinary frequencies, not angular),
//   times in us, lengths in nm.
// 1 MHz * 1 us = 1, so propagation phases are exp(-2*pi*i * E * t) with E in
// MHz and t in us.

namespace spinsim {

namespace constants {
// CODATA 2018, SI.
inline constexpr double kMu0Si = 1.25663706212e-6;      // vacuum permeability [N/A^2]
inline constexpr double kMuBohrSi = 9.2740100783e-24;   // Bohr magneton [J/T]
inline constexpr double kPlanckSi = 6.62607015e-34;     // Planck constant [J s], exact
inline constexpr double kGElectron = 2.0023;            // NV electronic g-factor
}  // namespace constants

/// mu0 * (g mu_B)^2 / (4 pi h) evaluated from the constants above, in MHz nm^3.
double computed_j_dd_mhz_nm3();

// MHz nm^3 <-> Hz m^3
double j_dd_to_si(double j_dd_mhz_nm3);
double j_dd_from_si(double j_dd_hz_m3);

/// Physical inputs of a run. Times may be infinite (no decay channel).
struct PhysicalParams {
  double delta_mhz = 0.0;      // two-level splitting (zero-field + axial Zeeman)
  double omega_mhz = 0.0;      // transverse field
  double j_dd_mhz_nm3 = 0.0;   // dipolar prefactor: V = j_dd * (1 - 3cos^2) / d^3
  double omega_ext_mhz = 0.0;  // external drive scale, 0 if unused
  double t2_us = 0.0;          // single-spin dephasing time
  double t1_down_us = 0.0;     // 1 -> 0 depolarization time
  double t1_up_us = 0.0;       // 0 -> 1 depolarization time

  /// Throws std::invalid_argument listing every violated constraint.
  void validate() const;

  bool operator==(const PhysicalParams&) const = default;
};

/// NV defaults: delta = 4000 MHz, omega = 110 MHz, j_dd = mu0 (g_e mu_B)^2 / (4 pi h)
/// ~ 52.0 MHz nm^3 with g_e = 2.0023. T2 of order milliseconds, T1 infinite.
PhysicalParams default_nv_params();

/// J = N Omega^2 / Delta. Throws if delta <= 0.
double perturbative_j(const PhysicalParams& params, int n);

/// Energy-scale ordering delta >> J >> V_dd >> Omega_ext, plus the perturbative
/// ratio sqrt(N) Omega / delta. "Pass" means ratio >= ratio_threshold; the
/// perturbative ratio warns above perturbative_threshold. Thresholds are
/// conventions, not physics, and are exposed as arguments.
struct HierarchyReport {
  double delta_mhz = 0.0;
  double j_mhz = 0.0;
  double v_dd_mhz = 0.0;
  double omega_ext_mhz = 0.0;
  double ratio_delta_j = 0.0;   // +inf when the denominator is zero
  double ratio_j_vdd = 0.0;
  double ratio_vdd_ext = 0.0;
  bool pass_delta_j = false;
  bool pass_j_vdd = false;
  bool pass_vdd_ext = false;
  double perturbative_ratio = 0.0;  // sqrt(N) Omega / delta
  bool perturbative_ok = false;
  double ratio_threshold = 5.0;
  double perturbative_threshold = 0.5;

  bool all_pass() const;
  std::string summary() const;
};

HierarchyReport check_hierarchy(const PhysicalParams& params, int n, double v_dd_typ_mhz,
                                double ratio_threshold = 5.0,
                                double perturbative_threshold = 0.5);

}  // namespace spinsim
