#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "spinsim/sparse_op.hpp"

namespace spinsim {

struct LanczosOptions {
  int max_iterations = 400;      // Krylov dimension bound
  double residual_tol = 1e-8;    // scaled by max(1, gershgorin bound of H)
  std::uint64_t start_seed = 0x5eed5eedULL;
};

struct ShiftInvertResult {
  Eigen::VectorXd energies;   // ascending
  Eigen::MatrixXd vectors;    // columns, unit norm
  Eigen::VectorXd residuals;  // |H v - E v| per pair
  int iterations = 0;
};

/// k eigenpairs of H nearest sigma via Lanczos with full reorthogonalization
/// on (H - sigma I)^{-1} (sparse LU). Throws std::runtime_error with the best
/// achieved residual if convergence fails within max_iterations.
ShiftInvertResult shift_invert_lanczos(const SparseOperator& h, double sigma, int k,
                                       const LanczosOptions& opts = {});

}  // namespace spinsim
