#include "spinsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace spinsim {

double hamiltonian_diagonal_offset(const HamiltonianSpec& spec) {
  double off = -0.5 * spec.params.delta_mhz * spec.geometry.n_spins();
  if (spec.include_qubit) off += -0.5 * spec.qubit_delta_mhz;
  return off;
}

SparseOperator build_hamiltonian(const HamiltonianSpec& spec) {
  spec.geometry.validate();
  spec.params.validate();
  if (spec.include_qubit && !spec.geometry.qubit_position_nm)
    throw std::invalid_argument("build_hamiltonian: include_qubit needs a qubit position");

  const int n_ens = spec.geometry.n_spins();
  const int n_total = n_ens + (spec.include_qubit ? 1 : 0);
  const int qubit = spec.include_qubit ? n_ens : -1;

  auto basis = std::make_shared<TruncatedBasis>(n_total, spec.m_max, spec.dimension_cap);
  const CouplingMatrix cm = build_couplings(spec.geometry, spec.params);

  // Pair coupling across ensemble spins and the appended qubit.
  const auto coupling = [&](int i, int j) -> double {
    if (i == qubit) return (*cm.v_qubit_mhz)(j);
    if (j == qubit) return (*cm.v_qubit_mhz)(i);
    return cm.v0_mhz(i, j);
  };

  const double delta = spec.params.delta_mhz;
  const double omega = spec.params.omega_mhz;
  const std::size_t dim = basis->dimension();

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(dim * (spec.m_max > 1 ? static_cast<std::size_t>(n_total) : 4));

  std::vector<int> scratch;
  std::vector<char> in_state(n_total);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto s = basis->state(idx);
    const auto row = static_cast<Eigen::Index>(idx);

    std::fill(in_state.begin(), in_state.end(), 0);
    for (int i : s) in_state[i] = 1;

    // (a) diagonal: on-site splittings plus the doubly-excited projector term
    double diag = 0.0;
    for (int i : s) diag += (i == qubit) ? spec.qubit_delta_mhz : delta;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) diag += coupling(s[a], s[b]);
    if (diag != 0.0) entries.emplace_back(row, row, diag);

    // (b) flip-flop: move one excitation i -> j; upper triangle only, the
    // reverse move emits the mirrored pair.
    for (int i : s)
      for (int j = 0; j < n_total; ++j) {
        if (in_state[j]) continue;
        scratch.assign(s.begin(), s.end());
        scratch.erase(std::find(scratch.begin(), scratch.end(), i));
        scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), j), j);
        const std::size_t tgt = basis->index_of(scratch);
        if (tgt > idx) {
          const double v = coupling(i, j);
          if (v != 0.0)
            entries.emplace_back(row, static_cast<Eigen::Index>(tgt), -v);
        }
      }

    // (c) transverse field: raise one spin; target manifold is higher so the
    // entry is always above the diagonal. (The lowering half is the mirror.)
    if (omega != 0.0 && static_cast<int>(s.size()) + 1 <= spec.m_max) {
      for (int j = 0; j < n_total; ++j) {
        if (in_state[j]) continue;
        if (j == qubit && !spec.apply_transverse_to_qubit) continue;
        scratch.assign(s.begin(), s.end());
        scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), j), j);
        const std::size_t tgt = basis->index_of(scratch);
        entries.emplace_back(row, static_cast<Eigen::Index>(tgt), omega);
      }
    }
  }

  return SparseOperator(std::move(basis), entries);
}

double effective_coupling_prediction(double n_c, double distance_nm,
                                     const PhysicalParams& params, double angular) {
  if (!(n_c >= 1.0)) throw std::invalid_argument("effective_coupling_prediction: n_c must be >= 1");
  if (!(distance_nm > 0.0))
    throw std::invalid_argument("effective_coupling_prediction: distance must be > 0");
  return std::sqrt(n_c) * params.j_dd_mhz_nm3 * angular / (distance_nm * distance_nm * distance_nm);
}

}  // namespace spinsim
