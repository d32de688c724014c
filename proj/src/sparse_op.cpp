#include "spinsim/sparse_op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace spinsim {

SparseOperator::SparseOperator(std::shared_ptr<const TruncatedBasis> basis,
                               const std::vector<Eigen::Triplet<double>>& upper_entries)
    : basis_(std::move(basis)) {
  const auto dim = static_cast<Eigen::Index>(basis_->dimension());
  for (const auto& t : upper_entries) {
    if (t.row() > t.col()) throw std::invalid_argument("SparseOperator: entry below diagonal");
    if (t.col() >= dim) throw std::invalid_argument("SparseOperator: entry out of range");
  }
  upper_.resize(dim, dim);
  upper_.setFromTriplets(upper_entries.begin(), upper_entries.end());
  upper_.makeCompressed();
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const {
  return upper_.selfadjointView<Eigen::Upper>() * x;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(x.size());
  y.real() = upper_.selfadjointView<Eigen::Upper>() * Eigen::VectorXd(x.real());
  y.imag() = upper_.selfadjointView<Eigen::Upper>() * Eigen::VectorXd(x.imag());
  return y;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(upper_.rows(), upper_.cols());
  for (int k = 0; k < upper_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(upper_, k); it; ++it) {
      m(it.row(), it.col()) = it.value();
      m(it.col(), it.row()) = it.value();
    }
  return m;
}

Eigen::SparseMatrix<double> SparseOperator::to_symmetric_sparse() const {
  Eigen::SparseMatrix<double> full;
  full = upper_.selfadjointView<Eigen::Upper>();
  full.makeCompressed();
  return full;
}

double SparseOperator::gershgorin_bound() const {
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(upper_.rows());
  for (int k = 0; k < upper_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(upper_, k); it; ++it) {
      const double a = std::abs(it.value());
      row_sum(it.row()) += a;
      if (it.row() != it.col()) row_sum(it.col()) += a;
    }
  return row_sum.size() ? row_sum.maxCoeff() : 0.0;
}

void SparseOperator::dump_coordinate(std::ostream& os) const {
  struct Entry {
    Eigen::Index r, c;
    double v;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(upper_.nonZeros()));
  for (int k = 0; k < upper_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(upper_, k); it; ++it)
      entries.push_back({it.row(), it.col(), it.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.v);
    os << e.r << " " << e.c << " " << buf << "\n";
  }
}

}  // namespace spinsim
