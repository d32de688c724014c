#include "spinsim/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

extern "C" void openblas_set_num_threads(int);

namespace spinsim {

DenseEig dense_symmetric_eig(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_symmetric_eig: not square");
  const auto n = static_cast<lapack_int>(a.rows());
  DenseEig out;
  out.values.resize(n);
  // Eigen is column-major; dsyevd overwrites `a` with the eigenvectors.
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data());
  if (info != 0)
    throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  out.vectors = std::move(a);
  return out;
}

void set_blas_threads(int n) { openblas_set_num_threads(n); }

}  // namespace spinsim
