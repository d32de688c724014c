#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <memory>
#include <vector>

#include "spinsim/basis.hpp"

namespace spinsim {

/// Real symmetric sparse operator on a TruncatedBasis. Only the upper triangle
/// (row <= col) is stored; the materialized matrix is symmetric by
/// construction.
class SparseOperator {
 public:
  SparseOperator(std::shared_ptr<const TruncatedBasis> basis,
                 const std::vector<Eigen::Triplet<double>>& upper_entries);

  std::size_t dimension() const { return static_cast<std::size_t>(upper_.rows()); }
  const TruncatedBasis& basis() const { return *basis_; }
  const std::shared_ptr<const TruncatedBasis>& basis_ptr() const { return basis_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  Eigen::MatrixXd to_dense() const;

  /// Full symmetric sparse matrix (both triangles).
  Eigen::SparseMatrix<double> to_symmetric_sparse() const;

  const Eigen::SparseMatrix<double>& upper() const { return upper_; }
  std::size_t stored_nonzeros() const { return static_cast<std::size_t>(upper_.nonZeros()); }

  /// Gershgorin bound on the spectral radius; cheap scale for residual tests.
  double gershgorin_bound() const;

  /// Coordinate text dump "row col value" (upper triangle, sorted by row then
  /// col) for cross-implementation diffing.
  void dump_coordinate(std::ostream& os) const;

 private:
  std::shared_ptr<const TruncatedBasis> basis_;
  Eigen::SparseMatrix<double> upper_;
};

}  // namespace spinsim
