#pragma once

#include <Eigen/Dense>

namespace spinsim {

struct DenseEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

/// Full symmetric eigendecomposition (LAPACK dsyevd); consumes the input.
DenseEig dense_symmetric_eig(Eigen::MatrixXd a);

/// Pin the BLAS thread count. The experiment runner pins it to 1 so results
/// are bitwise reproducible regardless of worker count.
void set_blas_threads(int n);

}  // namespace spinsim
