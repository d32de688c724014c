#include "spinsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinsim {

StateVector zero_state(std::shared_ptr<const TruncatedBasis> basis) {
  StateVector s{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()))};
  s.amplitudes(0) = 1.0;
  return s;
}

StateVector w_state(std::shared_ptr<const TruncatedBasis> basis) {
  if (basis->m_max() < 1) throw std::invalid_argument("w_state: needs m_max >= 1");
  StateVector s{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()))};
  const int n = basis->n_spins();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t m1 = basis->manifold_begin(1);
  for (int i = 0; i < n; ++i) s.amplitudes(static_cast<Eigen::Index>(m1 + i)) = amp;
  return s;
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.basis != b.basis && a.basis->dimension() != b.basis->dimension())
    throw std::invalid_argument("inner: basis mismatch");
  return a.amplitudes.dot(b.amplitudes);  // conjugates the left argument
}

SigmaResult apply_sigma(PauliKind kind, int spin, const StateVector& psi) {
  const TruncatedBasis& basis = *psi.basis;
  if (spin < 0 || spin >= basis.n_spins())
    throw std::out_of_range("apply_sigma: spin index out of range");

  const std::size_t dim = basis.dimension();
  SigmaResult out{{psi.basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))}, 0.0};

  std::vector<int> scratch;
  scratch.reserve(basis.m_max() + 1);

  for (std::size_t idx = 0; idx < dim; ++idx) {
    const std::complex<double> amp = psi.amplitudes(static_cast<Eigen::Index>(idx));
    if (amp == 0.0) continue;
    const auto s = basis.state(idx);
    const bool excited = std::binary_search(s.begin(), s.end(), spin);

    const bool lower = (kind == PauliKind::Minus || kind == PauliKind::X);
    const bool raise = (kind == PauliKind::Plus || kind == PauliKind::X);

    if (kind == PauliKind::Z) {
      out.state.amplitudes(static_cast<Eigen::Index>(idx)) += (excited ? amp : -amp);
      continue;
    }
    if (lower && excited) {
      scratch.assign(s.begin(), s.end());
      scratch.erase(std::find(scratch.begin(), scratch.end(), spin));
      const std::size_t tgt = basis.index_of(scratch);
      out.state.amplitudes(static_cast<Eigen::Index>(tgt)) += amp;
    }
    if (raise && !excited) {
      if (static_cast<int>(s.size()) + 1 > basis.m_max()) {
        out.leaked_weight += std::norm(amp);
      } else {
        scratch.assign(s.begin(), s.end());
        scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), spin), spin);
        const std::size_t tgt = basis.index_of(scratch);
        out.state.amplitudes(static_cast<Eigen::Index>(tgt)) += amp;
      }
    }
  }
  return out;
}

}  // namespace spinsim
