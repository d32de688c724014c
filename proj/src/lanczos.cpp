#include "spinsim/lanczos.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spinsim {

namespace {

Eigen::VectorXd random_start(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  v.normalize();
  return v;
}

}  // namespace

ShiftInvertResult shift_invert_lanczos(const SparseOperator& h, double sigma, int k,
                                       const LanczosOptions& opts) {
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  if (k < 1) throw std::invalid_argument("shift_invert_lanczos: k must be >= 1");
  if (k > dim) k = static_cast<int>(dim);
  const double scale = std::max(1.0, h.gershgorin_bound());
  const double tol = opts.residual_tol * scale;

  Eigen::SparseMatrix<double> shifted = h.to_symmetric_sparse();
  for (Eigen::Index i = 0; i < dim; ++i) shifted.coeffRef(i, i) -= sigma;
  shifted.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  double sigma_used = sigma;
  lu.compute(shifted);
  for (int tries = 0; lu.info() != Eigen::Success && tries < 4; ++tries) {
    // sigma hit an eigenvalue; nudge it
    const double nudge = (tries + 1) * 1e-8 * scale;
    for (Eigen::Index i = 0; i < dim; ++i) shifted.coeffRef(i, i) -= nudge;
    sigma_used += nudge;
    lu.compute(shifted);
  }
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("shift_invert_lanczos: factorization failed");

  const int m_cap = std::min<int>(opts.max_iterations, static_cast<int>(dim));
  Eigen::MatrixXd basis(dim, m_cap);  // Lanczos vectors
  std::vector<double> alpha, beta;    // T diagonal / off-diagonal
  alpha.reserve(m_cap);
  beta.reserve(m_cap);

  basis.col(0) = random_start(h.dimension(), opts.start_seed);
  Eigen::VectorXd w;
  double best_worst_residual = std::numeric_limits<double>::infinity();

  int m = 0;
  while (m < m_cap) {
    // one Lanczos step with full reorthogonalization
    w = lu.solve(basis.col(m));
    const double a = basis.col(m).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(m);
    if (m > 0) w -= beta[m - 1] * basis.col(m - 1);
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
    const double b = w.norm();
    ++m;

    const bool breakdown = b < 1e-13;
    if (!breakdown && m < m_cap) {
      beta.push_back(b);
      basis.col(m) = w / b;
    }

    const bool check_now = breakdown || m == m_cap || (m >= k && m % 10 == 0);
    if (!check_now) continue;

    // Ritz pairs of the tridiagonal T_m
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    // largest |theta| of the inverted operator are the energies nearest sigma
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a_, int b_) {
      return std::abs(es.eigenvalues()(a_)) > std::abs(es.eigenvalues()(b_));
    });

    const int want = std::min(k, m);
    Eigen::VectorXd energies(want);
    Eigen::MatrixXd vectors(dim, want);
    Eigen::VectorXd residuals(want);
    double worst = 0.0;
    bool usable = true;
    for (int j = 0; j < want; ++j) {
      const double theta = es.eigenvalues()(order[j]);
      if (theta == 0.0) {
        usable = false;
        break;
      }
      vectors.col(j) = basis.leftCols(m) * es.eigenvectors().col(order[j]);
      vectors.col(j).normalize();
      energies(j) = sigma_used + 1.0 / theta;
      residuals(j) = (h.apply(Eigen::VectorXd(vectors.col(j))) - energies(j) * vectors.col(j)).norm();
      worst = std::max(worst, residuals(j));
    }
    if (usable) best_worst_residual = std::min(best_worst_residual, worst);

    if (usable && worst <= tol) {
      // sort ascending by energy
      std::vector<int> by_e(want);
      std::iota(by_e.begin(), by_e.end(), 0);
      std::sort(by_e.begin(), by_e.end(),
                [&](int a_, int b_) { return energies(a_) < energies(b_); });
      ShiftInvertResult out;
      out.energies.resize(want);
      out.vectors.resize(dim, want);
      out.residuals.resize(want);
      for (int j = 0; j < want; ++j) {
        out.energies(j) = energies(by_e[j]);
        out.vectors.col(j) = vectors.col(by_e[j]);
        out.residuals(j) = residuals(by_e[j]);
      }
      out.iterations = m;
      return out;
    }
    if (breakdown) {
      // invariant subspace exhausted before convergence
      break;
    }
  }

  std::ostringstream os;
  os << "shift_invert_lanczos: no convergence after " << m
     << " iterations; best residual " << best_worst_residual << " (tol " << tol << ")";
  throw std::runtime_error(os.str());
}

}  // namespace spinsim
