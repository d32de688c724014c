#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "spinsim/basis.hpp"

namespace spinsim {

struct StateVector {
  std::shared_ptr<const TruncatedBasis> basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// All spins in m_s = 0 (basis state 0).
StateVector zero_state(std::shared_ptr<const TruncatedBasis> basis);

/// |W> = 1/sqrt(N) sum_i |0...1_i...0>. Throws if m_max = 0.
StateVector w_state(std::shared_ptr<const TruncatedBasis> basis);

std::complex<double> inner(const StateVector& a, const StateVector& b);

// Convention: m_s = 1 is "excited" with sigma_z eigenvalue +1, m_s = 0 has -1.
enum class PauliKind { Z, Plus, Minus, X };

/// Operator application result. `leaked_weight` is the squared norm of
/// amplitudes that were raised past m_max and dropped; convergence checks
/// monitor it.
struct SigmaResult {
  StateVector state;
  double leaked_weight = 0.0;
};

SigmaResult apply_sigma(PauliKind kind, int spin, const StateVector& psi);

}  // namespace spinsim
