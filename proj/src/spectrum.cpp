#include "spinsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinsim/hamiltonian.hpp"
#include "spinsim/lanczos.hpp"
#include "spinsim/linalg.hpp"

namespace spinsim {

double SpectrumResult::max_n_c() const {
  return collective >= 0 ? n_c[collective] : 0.0;
}

EigenMode SpectrumResult::mode(int i) const {
  EigenMode m;
  m.energy_mhz = energies(i);
  m.n_c = n_c[i];
  m.overlap_w = overlap_w[i];
  m.m_weight.assign(m_weight.col(i).data(), m_weight.col(i).data() + m_weight.rows());
  m.vector = vectors.col(i);
  return m;
}

void mode_statistics(const TruncatedBasis& basis, const Eigen::VectorXd& v, double& n_c,
                     double& overlap_w, Eigen::VectorXd& m_weight) {
  const int n = basis.n_spins();
  m_weight = Eigen::VectorXd::Zero(basis.m_max() + 1);
  for (int m = 0; m <= basis.m_max(); ++m) {
    const auto lo = static_cast<Eigen::Index>(basis.manifold_begin(m));
    const auto hi = static_cast<Eigen::Index>(basis.manifold_begin(m + 1));
    m_weight(m) = v.segment(lo, hi - lo).squaredNorm();
  }
  if (basis.m_max() >= 1) {
    const auto lo = static_cast<Eigen::Index>(basis.manifold_begin(1));
    const double s = v.segment(lo, n).sum();  // signed coherent sum
    n_c = s * s;
    overlap_w = n_c / static_cast<double>(n);
  } else {
    n_c = 0.0;
    overlap_w = 0.0;
  }
}

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

SpectrumResult finalize(std::shared_ptr<const TruncatedBasis> basis, Eigen::VectorXd energies,
                        Eigen::MatrixXd vectors, const SparseOperator& h) {
  SpectrumResult out;
  out.basis = std::move(basis);
  out.energies = std::move(energies);
  out.vectors = std::move(vectors);
  const int modes = out.mode_count();
  out.n_c.resize(modes);
  out.overlap_w.resize(modes);
  out.m_weight.resize(out.basis->m_max() + 1, modes);

  Eigen::VectorXd mw;
  double best_nc = -1.0, best_vac = -1.0;
  for (int j = 0; j < modes; ++j) {
    fix_sign(out.vectors.col(j));
    double nc = 0.0, ow = 0.0;
    mode_statistics(*out.basis, out.vectors.col(j), nc, ow, mw);
    out.n_c[j] = nc;
    out.overlap_w[j] = ow;
    out.m_weight.col(j) = mw;
    if (nc > best_nc) {
      best_nc = nc;
      out.collective = j;
    }
    const double vac = out.vectors(0, j) * out.vectors(0, j);
    if (vac > best_vac) {
      best_vac = vac;
      out.vacuum = j;
    }
  }

  // Residual spot check on the physically loaded modes.
  double worst = 0.0;
  for (int j : {out.collective, out.vacuum, 0, modes - 1}) {
    if (j < 0) continue;
    const Eigen::VectorXd r =
        h.apply(Eigen::VectorXd(out.vectors.col(j))) - out.energies(j) * out.vectors.col(j);
    worst = std::max(worst, r.norm());
  }
  out.max_residual = worst;
  return out;
}

}  // namespace

SpectrumResult diagonalize(const SparseOperator& h, const DiagonalizeOptions& opts) {
  if (opts.mode == DiagonalizeOptions::Mode::Dense) {
    if (h.dimension() > opts.dense_cap)
      throw std::invalid_argument("diagonalize: dimension exceeds dense cap");
    DenseEig eig = dense_symmetric_eig(h.to_dense());
    return finalize(h.basis_ptr(), std::move(eig.values), std::move(eig.vectors), h);
  }

  if (!opts.window_center_mhz)
    throw std::invalid_argument("diagonalize: iterative mode needs a window center");
  LanczosOptions lopts;
  lopts.residual_tol = opts.residual_tol;
  ShiftInvertResult si = shift_invert_lanczos(h, *opts.window_center_mhz, opts.k, lopts);

  if (opts.window_halfwidth_mhz) {
    std::vector<int> keep;
    for (int j = 0; j < si.energies.size(); ++j)
      if (std::abs(si.energies(j) - *opts.window_center_mhz) <= *opts.window_halfwidth_mhz)
        keep.push_back(j);
    Eigen::VectorXd e(keep.size());
    Eigen::MatrixXd v(si.vectors.rows(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
      e(static_cast<Eigen::Index>(j)) = si.energies(keep[j]);
      v.col(static_cast<Eigen::Index>(j)) = si.vectors.col(keep[j]);
    }
    si.energies = std::move(e);
    si.vectors = std::move(v);
  }
  return finalize(h.basis_ptr(), std::move(si.energies), std::move(si.vectors), h);
}

double collective_mode_energy(const SpectrumResult& spec, double n_c_floor) {
  if (spec.collective < 0 || spec.vacuum < 0)
    throw NoCollectiveMode("no collective mode: empty spectrum");
  if (spec.n_c[spec.collective] < n_c_floor)
    throw NoCollectiveMode("no collective mode: max N_c " +
                           std::to_string(spec.n_c[spec.collective]) + " below floor " +
                           std::to_string(n_c_floor));
  return spec.energies(spec.collective) - spec.energies(spec.vacuum);
}

std::vector<OmegaSweepRow> sweep_omega(const SpinGeometry& geom, const PhysicalParams& params,
                                       const std::vector<double>& omegas_mhz, int m_max,
                                       const DiagonalizeOptions& opts, double n_c_floor) {
  if (omegas_mhz.empty()) throw std::invalid_argument("sweep_omega: empty grid");
  std::vector<OmegaSweepRow> rows;
  rows.reserve(omegas_mhz.size());
  for (double omega : omegas_mhz) {
    OmegaSweepRow row;
    row.omega_mhz = omega;
    try {
      HamiltonianSpec spec{geom, params, m_max};
      spec.params.omega_mhz = omega;
      const SpectrumResult s = diagonalize(build_hamiltonian(spec), opts);
      row.max_n_c = s.max_n_c();
      try {
        row.e_c_mhz = collective_mode_energy(s, n_c_floor);
      } catch (const NoCollectiveMode&) {
        row.e_c_mhz = std::numeric_limits<double>::quiet_NaN();
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

TruncationReport truncation_check(const SpinGeometry& geom, const PhysicalParams& params,
                                  int m_low, int m_high, const DiagonalizeOptions& opts) {
  TruncationReport rep;
  rep.m_low = m_low;
  rep.m_high = m_high;

  const auto gap_and_nc = [&](int m_max, double& gap, double& nc) {
    HamiltonianSpec spec{geom, params, m_max};
    const SpectrumResult s = diagonalize(build_hamiltonian(spec), opts);
    // No n_c floor here: at Omega = 0 the strongest mode is a localized one
    // and the check must still report (zero) change.
    gap = s.energies(s.collective) - s.energies(s.vacuum);
    nc = s.n_c[s.collective];
  };
  gap_and_nc(m_low, rep.e_c_low_mhz, rep.n_c_low);
  gap_and_nc(m_high, rep.e_c_high_mhz, rep.n_c_high);

  rep.de_over_delta = std::abs(rep.e_c_high_mhz - rep.e_c_low_mhz) / params.delta_mhz;
  rep.dn_c_rel = rep.n_c_low != 0.0
                     ? std::abs(rep.n_c_high - rep.n_c_low) / rep.n_c_low
                     : std::abs(rep.n_c_high - rep.n_c_low);
  return rep;
}

}  // namespace spinsim
