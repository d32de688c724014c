#include "spinsim/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinsim/linalg.hpp"

namespace spinsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using Cd = std::complex<double>;

// exp(-2 pi i h T) e1 * beta1 for the tridiagonal T (alpha, beta), plus the
// magnitude of the bottom component used for the local error estimate.
Eigen::VectorXcd tridiag_expv(const std::vector<double>& alpha, const std::vector<double>& beta,
                              int m, double h_us, double beta1, double& bottom_abs) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const Eigen::VectorXd first_row = es.eigenvectors().row(0).transpose();
  Eigen::VectorXcd phases(m);
  for (int i = 0; i < m; ++i) {
    const double ang = -kTwoPi * es.eigenvalues()(i) * h_us;
    phases(i) = Cd(std::cos(ang), std::sin(ang)) * first_row(i) * beta1;
  }
  const Eigen::VectorXcd y = es.eigenvectors() * phases;
  bottom_abs = std::abs(y(m - 1));
  return y;
}

}  // namespace

KrylovPropagator::KrylovPropagator(const SparseOperator& h, double tol, int max_krylov)
    : h_(h), tol_(tol), max_krylov_(max_krylov) {
  if (!(tol > 0.0)) throw std::invalid_argument("KrylovPropagator: tol must be > 0");
}

void KrylovPropagator::step(Eigen::VectorXcd& psi, double dt_us) {
  if (dt_us == 0.0) return;
  const double direction = dt_us < 0.0 ? -1.0 : 1.0;
  double remaining = std::abs(dt_us);
  const double total = remaining;
  const int m_cap = std::min<int>(max_krylov_, static_cast<int>(h_.dimension()));

  Eigen::MatrixXcd basis(psi.size(), m_cap);
  std::vector<double> alpha, beta;

  double h_try = (suggested_h_ > 0.0) ? std::min(suggested_h_, remaining) : remaining;

  while (remaining > 0.0) {
    if (h_try < 1e-12 * total)
      throw std::runtime_error("KrylovPropagator: step size underflow");

    const double beta1 = psi.norm();
    if (!std::isfinite(beta1) || beta1 == 0.0)
      throw std::runtime_error("KrylovPropagator: non-finite or zero state");
    basis.col(0) = psi / beta1;
    alpha.clear();
    beta.clear();

    int m = 0;
    bool happy = false;
    Eigen::VectorXcd w;
    while (m < m_cap) {
      w = h_.apply(Eigen::VectorXcd(basis.col(m)));
      ++matvecs_;
      const double a = std::real(basis.col(m).dot(w));
      alpha.push_back(a);
      w -= a * basis.col(m);
      if (m > 0) w -= beta[m - 1] * basis.col(m - 1);
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).adjoint() * w);
      const double b = w.norm();
      ++m;
      if (b < 1e-12 * std::max(1.0, std::abs(a))) {
        happy = true;  // invariant subspace: exponential is exact
        break;
      }
      if (m < m_cap) {
        beta.push_back(b);
        basis.col(m) = w / b;
      } else {
        beta.push_back(b);  // kept for the error estimate
      }
    }

    for (;;) {
      double bottom = 0.0;
      const Eigen::VectorXcd y =
          tridiag_expv(alpha, beta, m, direction * h_try, beta1, bottom);
      // Local defect estimate: coupling out of the Krylov space through the
      // last basis vector.
      const double err =
          happy ? 0.0 : kTwoPi * h_try * (m <= static_cast<int>(beta.size()) ? beta[m - 1] : 0.0) * bottom;
      const double budget = tol_ * std::max(h_try / total, 1e-16);
      if (err <= budget || happy) {
        psi = basis.leftCols(m) * y;
        remaining -= h_try;
        ++substeps_;
        if (err < 0.1 * budget) suggested_h_ = h_try * 1.5;
        else suggested_h_ = h_try;
        h_try = std::min(suggested_h_ > 0 ? suggested_h_ : remaining, remaining);
        break;
      }
      h_try *= 0.5;
      if (h_try < 1e-12 * total)
        throw std::runtime_error("KrylovPropagator: step size underflow");
    }
    if (!psi.allFinite()) throw std::runtime_error("KrylovPropagator: non-finite amplitudes");
  }
}

DensePropagator::DensePropagator(const SparseOperator& h) {
  DenseEig eig = dense_symmetric_eig(h.to_dense());
  energies_ = std::move(eig.values);
  vectors_ = std::move(eig.vectors);
}

Eigen::VectorXcd DensePropagator::coefficients(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd c(psi.size());
  c.real() = vectors_.transpose() * Eigen::VectorXd(psi.real());
  c.imag() = vectors_.transpose() * Eigen::VectorXd(psi.imag());
  return c;
}

Eigen::VectorXcd DensePropagator::state_at(const Eigen::VectorXcd& coeffs, double t_us) const {
  const Eigen::Index n = energies_.size();
  Eigen::VectorXcd phased(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ang = -kTwoPi * energies_(i) * t_us;
    phased(i) = coeffs(i) * Cd(std::cos(ang), std::sin(ang));
  }
  Eigen::VectorXcd out(n);
  out.real() = vectors_ * Eigen::VectorXd(phased.real());
  out.imag() = vectors_ * Eigen::VectorXd(phased.imag());
  return out;
}

std::vector<double> DensePropagator::population_trace(const Eigen::VectorXcd& coeffs,
                                                      const std::vector<int>& rows,
                                                      const std::vector<double>& t_grid_us) const {
  const Eigen::Index n = energies_.size();
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  // Restricted mixing matrix W = V[rows,:] * diag(coeffs), complex r x n.
  Eigen::MatrixXcd w(r, n);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index j = 0; j < n; ++j) w(a, j) = vectors_(rows[a], j) * coeffs(j);

  std::vector<double> out;
  out.reserve(t_grid_us.size());
  Eigen::VectorXcd phases(n);
  for (double t : t_grid_us) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ang = -kTwoPi * energies_(j) * t;
      phases(j) = Cd(std::cos(ang), std::sin(ang));
    }
    out.push_back((w * phases).squaredNorm());
  }
  return out;
}

double DensePropagator::energy_expectation(const Eigen::VectorXcd& coeffs) const {
  double e = 0.0;
  for (Eigen::Index i = 0; i < energies_.size(); ++i) e += std::norm(coeffs(i)) * energies_(i);
  return e;
}

}  // namespace spinsim
