#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

namespace {

Eigen::Matrix2d make(double a00, double a01, double a10, double a11) {
  Eigen::Matrix2d m;
  m << a00, a01, a10, a11;
  return m;
}

}  // namespace

const Eigen::Matrix2d kSigmaZ = make(-1, 0, 0, 1);
const Eigen::Matrix2d kSigmaX = make(0, 1, 1, 0);
const Eigen::Matrix2d kSigmaPlus = make(0, 0, 1, 0);   // |1><0|
const Eigen::Matrix2d kSigmaMinus = make(0, 1, 0, 0);  // |0><1|
const Eigen::Matrix2d kProjExcited = make(0, 0, 0, 1);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd site_operator(const Eigen::Matrix2d& op, int site, int n) {
  if (site < 0 || site >= n) throw std::invalid_argument("site_operator: bad site");
  // site 0 = least-significant bit = last Kronecker factor
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k)
    m = kron(m, k == site ? Eigen::MatrixXd(op) : Eigen::MatrixXd(Eigen::Matrix2d::Identity()));
  return m;
}

Eigen::MatrixXd full_hamiltonian(const spinsim::SpinGeometry& geom,
                                 const spinsim::PhysicalParams& params, bool include_qubit,
                                 double qubit_delta_mhz) {
  const int n_ens = geom.n_spins();
  const int n = n_ens + (include_qubit ? 1 : 0);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (int i = 0; i < n_ens; ++i) {
    h += params.delta_mhz * site_operator(kProjExcited, i, n);
    if (params.omega_mhz != 0.0) h += params.omega_mhz * site_operator(kSigmaX, i, n);
  }
  if (include_qubit) h += qubit_delta_mhz * site_operator(kProjExcited, n_ens, n);

  const auto couple = [&](int i, int j, double v) {
    h += v * (site_operator(kProjExcited, i, n) * site_operator(kProjExcited, j, n) -
              site_operator(kSigmaPlus, i, n) * site_operator(kSigmaMinus, j, n) -
              site_operator(kSigmaMinus, i, n) * site_operator(kSigmaPlus, j, n));
  };

  for (int i = 0; i < n_ens; ++i)
    for (int j = i + 1; j < n_ens; ++j)
      couple(i, j, spinsim::dipolar_coupling(geom.positions_nm[i], geom.positions_nm[j],
                                             geom.axis, params.j_dd_mhz_nm3));
  if (include_qubit) {
    for (int i = 0; i < n_ens; ++i)
      couple(i, n_ens,
             spinsim::dipolar_coupling(geom.positions_nm[i], *geom.qubit_position_nm, geom.axis,
                                       params.j_dd_mhz_nm3));
  }
  return h;
}

std::vector<std::size_t> bitmask_of_truncated(const spinsim::TruncatedBasis& basis) {
  std::vector<std::size_t> map(basis.dimension());
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    std::size_t mask = 0;
    for (int s : basis.state(idx)) mask |= std::size_t{1} << s;
    map[idx] = mask;
  }
  return map;
}

}  // namespace oracle
