#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinsim/sparse_op.hpp"

namespace spinsim {

/// Short-iterate Lanczos propagator: psi <- exp(-2 pi i H dt) psi with
/// adaptive substepping so the estimated local error per step() call stays
/// below tol. Unconditionally norm-preserving up to roundoff (the small
/// exponential is exactly unitary).
class KrylovPropagator {
 public:
  explicit KrylovPropagator(const SparseOperator& h, double tol = 1e-10, int max_krylov = 48);

  void step(Eigen::VectorXcd& psi, double dt_us);

  long matvec_count() const { return matvecs_; }
  long substep_count() const { return substeps_; }

 private:
  const SparseOperator& h_;
  double tol_;
  int max_krylov_;
  double suggested_h_ = 0.0;
  long matvecs_ = 0;
  long substeps_ = 0;
};

/// Exact evolution of a time-independent H through one dense
/// eigendecomposition: psi(t) = V exp(-2 pi i E t) V^T psi(0).
class DensePropagator {
 public:
  explicit DensePropagator(const SparseOperator& h);

  const Eigen::VectorXd& energies() const { return energies_; }

  /// Eigenbasis coefficients c = V^T psi.
  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& psi) const;

  Eigen::VectorXcd state_at(const Eigen::VectorXcd& coeffs, double t_us) const;

  /// sum over `rows` of |psi_row(t)|^2 for every t in the grid, evaluated
  /// without materializing full state vectors.
  std::vector<double> population_trace(const Eigen::VectorXcd& coeffs,
                                       const std::vector<int>& rows,
                                       const std::vector<double>& t_grid_us) const;

  /// <H> in the eigenbasis; exactly conserved along the evolution.
  double energy_expectation(const Eigen::VectorXcd& coeffs) const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

}  // namespace spinsim
