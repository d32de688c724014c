#include "spinsim/units.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spinsim {

double computed_j_dd_mhz_nm3() {
  using namespace constants;
  const double moment = kGElectron * kMuBohrSi;               // J/T
  const double hz_m3 = kMu0Si * moment * moment / (4.0 * M_PI * kPlanckSi);
  return j_dd_from_si(hz_m3);
}

double j_dd_to_si(double j_dd_mhz_nm3) {
  // 1 MHz nm^3 = 1e6 Hz * 1e-27 m^3 = 1e-21 Hz m^3
  return j_dd_mhz_nm3 * 1e-21;
}

double j_dd_from_si(double j_dd_hz_m3) { return j_dd_hz_m3 * 1e21; }

namespace {

bool positive_or_infinite(double t) { return t > 0.0; }  // +inf compares > 0

}  // namespace

void PhysicalParams::validate() const {
  std::vector<std::string> problems;
  if (!(delta_mhz > 0.0)) problems.push_back("delta_mhz must be > 0");
  if (!(j_dd_mhz_nm3 > 0.0)) problems.push_back("j_dd_mhz_nm3 must be > 0");
  if (!(omega_mhz >= 0.0)) problems.push_back("omega_mhz must be >= 0");
  if (!(omega_ext_mhz >= 0.0)) problems.push_back("omega_ext_mhz must be >= 0");
  if (!positive_or_infinite(t2_us)) problems.push_back("t2_us must be > 0 (or infinite)");
  if (!positive_or_infinite(t1_down_us)) problems.push_back("t1_down_us must be > 0 (or infinite)");
  if (!positive_or_infinite(t1_up_us)) problems.push_back("t1_up_us must be > 0 (or infinite)");
  if (!problems.empty()) {
    std::ostringstream os;
    os << "invalid PhysicalParams:";
    for (const auto& p : problems) os << " " << p << ";";
    throw std::invalid_argument(os.str());
  }
}

PhysicalParams default_nv_params() {
  PhysicalParams p;
  p.delta_mhz = 4000.0;
  p.omega_mhz = 110.0;
  p.j_dd_mhz_nm3 = computed_j_dd_mhz_nm3();
  p.omega_ext_mhz = 0.0;
  p.t2_us = 1000.0;  // milliseconds-scale electronic dephasing
  p.t1_down_us = std::numeric_limits<double>::infinity();
  p.t1_up_us = std::numeric_limits<double>::infinity();
  return p;
}

double perturbative_j(const PhysicalParams& params, int n) {
  if (!(params.delta_mhz > 0.0)) throw std::invalid_argument("perturbative_j: delta must be > 0");
  if (n < 0) throw std::invalid_argument("perturbative_j: n must be >= 0");
  return static_cast<double>(n) * params.omega_mhz * params.omega_mhz / params.delta_mhz;
}

namespace {

double safe_ratio(double num, double den) {
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

bool HierarchyReport::all_pass() const {
  return pass_delta_j && pass_j_vdd && pass_vdd_ext && perturbative_ok;
}

std::string HierarchyReport::summary() const {
  std::ostringstream os;
  os << "hierarchy delta=" << delta_mhz << " J=" << j_mhz << " V_dd=" << v_dd_mhz
     << " Omega_ext=" << omega_ext_mhz << " MHz | delta/J=" << ratio_delta_j
     << (pass_delta_j ? " ok" : " WARN") << " J/V_dd=" << ratio_j_vdd
     << (pass_j_vdd ? " ok" : " WARN") << " V_dd/Omega_ext=" << ratio_vdd_ext
     << (pass_vdd_ext ? " ok" : " WARN") << " | sqrt(N)Omega/delta=" << perturbative_ratio
     << (perturbative_ok ? " ok" : " WARN");
  return os.str();
}

HierarchyReport check_hierarchy(const PhysicalParams& params, int n, double v_dd_typ_mhz,
                                double ratio_threshold, double perturbative_threshold) {
  HierarchyReport r;
  r.delta_mhz = params.delta_mhz;
  r.j_mhz = perturbative_j(params, n);
  r.v_dd_mhz = v_dd_typ_mhz;
  r.omega_ext_mhz = params.omega_ext_mhz;
  r.ratio_threshold = ratio_threshold;
  r.perturbative_threshold = perturbative_threshold;
  r.ratio_delta_j = safe_ratio(r.delta_mhz, r.j_mhz);
  r.ratio_j_vdd = safe_ratio(r.j_mhz, r.v_dd_mhz);
  r.ratio_vdd_ext = safe_ratio(r.v_dd_mhz, r.omega_ext_mhz);
  r.pass_delta_j = r.ratio_delta_j >= ratio_threshold;
  r.pass_j_vdd = r.ratio_j_vdd >= ratio_threshold;
  r.pass_vdd_ext = r.ratio_vdd_ext >= ratio_threshold;
  r.perturbative_ratio = std::sqrt(static_cast<double>(n)) * params.omega_mhz / params.delta_mhz;
  r.perturbative_ok = r.perturbative_ratio <= perturbative_threshold;
  return r;
}

}  // namespace spinsim
