#include "spinsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinsim/hamiltonian.hpp"
#include "spinsim/propagator.hpp"

namespace spinsim {

namespace {

void check_grid(const std::vector<double>& t) {
  if (t.empty()) throw std::invalid_argument("evolve: empty time grid");
  if (t.front() != 0.0) throw std::invalid_argument("evolve: grid must start at 0");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("evolve: grid must ascend");
}

double restricted_weight(const Eigen::VectorXcd& psi, const std::vector<int>& rows) {
  double w = 0.0;
  for (int r : rows) w += std::norm(psi(r));
  return w;
}

}  // namespace

std::optional<double> extract_pi_time(const std::vector<double>& times_us,
                                      const std::vector<double>& p) {
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    if (!(p[k] <= p[k - 1] && p[k] <= p[k + 1] && p[k] < 0.5)) continue;
    // quadratic refinement through the bracketing samples
    const double t0 = times_us[k - 1], t1 = times_us[k], t2 = times_us[k + 1];
    const double y0 = p[k - 1], y1 = p[k], y2 = p[k + 1];
    const double denom = (t0 - t1) * (t0 - t2) * (t1 - t2);
    double t_min = t1;
    if (denom != 0.0) {
      const double a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom;
      const double b =
          (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom;
      if (a > 0.0) t_min = std::clamp(-b / (2.0 * a), t0, t2);
    }
    return t_min;
  }
  return std::nullopt;
}

RabiTrace evolve(const SparseOperator& h, const StateVector& psi0,
                 const std::vector<double>& t_grid_us, const std::vector<int>& excited_rows,
                 const EvolveOptions& opts) {
  check_grid(t_grid_us);
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("evolve: initial state must be normalized");
  for (int r : excited_rows)
    if (r < 0 || static_cast<std::size_t>(r) >= h.dimension())
      throw std::out_of_range("evolve: excited row out of range");

  const bool dense = opts.method == EvolveOptions::Method::Dense ||
                     (opts.method == EvolveOptions::Method::Auto &&
                      h.dimension() <= opts.dense_cap);

  RabiTrace trace;
  trace.times_us = t_grid_us;
  trace.p_q.reserve(t_grid_us.size());

  if (dense) {
    const DensePropagator prop(h);
    const Eigen::VectorXcd coeffs = prop.coefficients(psi0.amplitudes);
    trace.p_q = prop.population_trace(coeffs, excited_rows, t_grid_us);
    trace.norm_drift = std::abs(coeffs.norm() - 1.0);
    trace.energy_drift_rel = 0.0;  // diagonal evolution conserves <H> identically
  } else {
    KrylovPropagator prop(h, opts.tol, opts.max_krylov);
    Eigen::VectorXcd psi = psi0.amplitudes;
    const double e0 = std::real(psi.dot(h.apply(psi)));
    const double e_scale = std::max(std::abs(e0), 1e-12 * std::max(1.0, h.gershgorin_bound()));
    double t_prev = 0.0;
    for (double t : t_grid_us) {
      prop.step(psi, t - t_prev);
      t_prev = t;
      trace.p_q.push_back(restricted_weight(psi, excited_rows));
      trace.norm_drift = std::max(trace.norm_drift, std::abs(psi.norm() - 1.0));
      const double e = std::real(psi.dot(h.apply(psi)));
      trace.energy_drift_rel = std::max(trace.energy_drift_rel, std::abs(e - e0) / e_scale);
    }
  }

  trace.t_pi_us = extract_pi_time(trace.times_us, trace.p_q);
  if (trace.t_pi_us) trace.v_c_mhz = 1.0 / (4.0 * *trace.t_pi_us);
  return trace;
}

ResonanceInfo tune_qubit_resonance(const SpinGeometry& geom, const PhysicalParams& params,
                                   int m_max, const DiagonalizeOptions& diag,
                                   double n_c_floor) {
  if (m_max < 1) throw std::invalid_argument("tune_qubit_resonance: m_max must be >= 1");
  const int n = geom.n_spins();
  const int m_high = std::min(m_max, n);
  const int m_low = std::min(m_max - 1, n);

  HamiltonianSpec spec_high{geom, params, m_high};
  spec_high.geometry.qubit_position_nm.reset();
  const SpectrumResult s_high = diagonalize(build_hamiltonian(spec_high), diag);
  const double gap_same = collective_mode_energy(s_high, n_c_floor);  // throws without a mode

  ResonanceInfo info;
  info.collective_gap_mhz = gap_same;
  info.n_c = s_high.n_c[s_high.collective];

  HamiltonianSpec spec_low{geom, params, m_low};
  spec_low.geometry.qubit_position_nm.reset();
  const SpectrumResult s_low = diagonalize(build_hamiltonian(spec_low), diag);
  info.qubit_delta_mhz =
      s_high.energies(s_high.collective) - s_low.energies(s_low.vacuum);
  info.dressed_vacuum = s_low.vectors.col(s_low.vacuum);
  info.low_basis = s_low.basis;
  return info;
}

namespace {

std::vector<double> linspace(double t_max, int n_steps) {
  if (n_steps < 2) throw std::invalid_argument("time grid needs at least 2 points");
  std::vector<double> t(n_steps);
  for (int k = 0; k < n_steps; ++k)
    t[k] = t_max * static_cast<double>(k) / static_cast<double>(n_steps - 1);
  return t;
}

RabiResult run_rabi(const SpinGeometry& geom_with_qubit, const PhysicalParams& params,
                    const ResonanceInfo& res, const RabiOptions& opts, double t_max_us) {
  if (!geom_with_qubit.qubit_position_nm)
    throw std::invalid_argument("rabi_experiment: geometry has no qubit position");

  RabiResult out;
  out.n_c = res.n_c;
  out.qubit_delta_mhz = opts.qubit_delta_override_mhz.value_or(res.qubit_delta_mhz);
  out.distance_nm = qubit_centroid_distance(geom_with_qubit);
  out.angular = qubit_angular_factor(geom_with_qubit);
  out.v_bare_mhz = params.j_dd_mhz_nm3 * std::abs(out.angular) /
                   (out.distance_nm * out.distance_nm * out.distance_nm);
  out.v_pred_mhz = std::sqrt(std::max(out.n_c, 1.0)) * out.v_bare_mhz;

  HamiltonianSpec spec{geom_with_qubit, params, opts.m_max};
  spec.include_qubit = true;
  spec.qubit_delta_mhz = out.qubit_delta_mhz;
  const SparseOperator h = build_hamiltonian(spec);
  const auto& basis = h.basis();
  const int n = geom_with_qubit.n_spins();  // qubit is spin index n

  // |1_q> x dressed vacuum, embedded into the combined basis.
  StateVector psi0{h.basis_ptr(),
                   Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()))};
  double leaked = 0.0;
  if (opts.bare_vacuum) {
    const int q[] = {n};
    psi0.amplitudes(static_cast<Eigen::Index>(basis.index_of(q))) = 1.0;
  } else {
    const TruncatedBasis& low = *res.low_basis;
    std::vector<int> scratch;
    for (std::size_t i = 0; i < low.dimension(); ++i) {
      const double a = res.dressed_vacuum(static_cast<Eigen::Index>(i));
      if (a == 0.0) continue;
      const auto s = low.state(i);
      if (static_cast<int>(s.size()) + 1 > basis.m_max()) {
        leaked += a * a;
        continue;
      }
      scratch.assign(s.begin(), s.end());
      scratch.push_back(n);  // qubit index is the largest, stays sorted
      psi0.amplitudes(static_cast<Eigen::Index>(basis.index_of(scratch))) = a;
    }
    psi0.amplitudes.normalize();
  }

  std::vector<int> excited_rows;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto s = basis.state(i);
    if (!s.empty() && s.back() == n) excited_rows.push_back(static_cast<int>(i));
  }

  out.trace = evolve(h, psi0, linspace(t_max_us, opts.n_steps), excited_rows, opts.evolve);
  out.trace.leaked_norm = leaked;
  return out;
}

}  // namespace

RabiResult rabi_experiment(const SpinGeometry& geom_with_qubit, const PhysicalParams& params,
                           const RabiOptions& opts) {
  const ResonanceInfo res =
      tune_qubit_resonance(geom_with_qubit, params, opts.m_max, opts.diag, opts.n_c_floor);
  return run_rabi(geom_with_qubit, params, res, opts, opts.t_max_us);
}

DistanceSweep sweep_distance(const SpinGeometry& geom, const PhysicalParams& params,
                             const std::vector<double>& r_list_nm,
                             const Eigen::Vector3d& direction, const RabiOptions& opts) {
  if (r_list_nm.empty()) throw std::invalid_argument("sweep_distance: empty R list");
  const auto [rmin, rmax] = std::minmax_element(r_list_nm.begin(), r_list_nm.end());
  if (*rmax < 3.0 * *rmin)
    throw std::invalid_argument("sweep_distance: R list must span at least a factor 3");

  const ResonanceInfo res =
      tune_qubit_resonance(geom, params, opts.m_max, opts.diag, opts.n_c_floor);

  DistanceSweep sweep;
  sweep.n_c = res.n_c;
  for (double r : r_list_nm) {
    DistanceRow row;
    row.r_nm = r;
    row.n_c = res.n_c;
    try {
      const SpinGeometry g = place_qubit(geom, r, direction);
      row.near_field = near_field(g);
      // pick the horizon from the predicted pi time so slow far rows still
      // show their first minimum
      const double angular = std::abs(qubit_angular_factor(g));
      const double v_pred =
          std::sqrt(std::max(res.n_c, 1.0)) * params.j_dd_mhz_nm3 * angular / (r * r * r);
      const double t_max = 3.0 / (4.0 * v_pred);
      const RabiResult rr = run_rabi(g, params, res, opts, t_max);
      row.t_pi_us = rr.trace.t_pi_us;
      row.v_c_mhz = rr.trace.v_c_mhz;
      if (row.v_c_mhz) {
        row.eff_r_nm = std::cbrt(std::sqrt(std::max(res.n_c, 1.0)) * params.j_dd_mhz_nm3 *
                                 angular / *row.v_c_mhz);
      }
      if (!row.t_pi_us) {
        row.ok = false;
        row.error = "no pi transfer within horizon";
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    sweep.rows.push_back(std::move(row));
  }

  // log-log slope over far-field rows
  std::vector<double> lx, ly;
  for (const auto& row : sweep.rows)
    if (row.ok && row.v_c_mhz && row.r_nm >= geom.sample_diameter_nm) {
      lx.push_back(std::log(row.r_nm));
      ly.push_back(std::log(*row.v_c_mhz));
    }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom != 0.0) sweep.slope = (n * sxy - sx * sy) / denom;
  }
  return sweep;
}

}  // namespace spinsim
