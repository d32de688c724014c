#pragma once

#include "spinsim/basis.hpp"
#include "spinsim/geometry.hpp"
#include "spinsim/sparse_op.hpp"
#include "spinsim/units.hpp"

namespace spinsim {

/// What to assemble. When include_qubit is set, geometry.qubit_position_nm
/// must be present and the qubit is appended as spin index n (last); the
/// truncation m_max then counts total (qubit + ensemble) excitations.
struct HamiltonianSpec {
  SpinGeometry geometry;
  PhysicalParams params;
  int m_max = 2;
  bool include_qubit = false;
  double qubit_delta_mhz = 0.0;
  bool apply_transverse_to_qubit = false;
  std::size_t dimension_cap = TruncatedBasis::kDefaultDimensionCap;
};

/// H = delta/2 sum_i sigma_z + Omega sum_i sigma_x + sum_{i<j} V_ij in the
/// truncated basis, with V_ij = V0_ij [1/4 (1+sigma_z)(1+sigma_z)
/// - sigma_+ sigma_- - sigma_- sigma_+].
///
/// Matrix elements for a basis state with excited set S:
///   diagonal   |S_ens| * delta + [qubit in S] * qubit_delta
///              + sum over pairs {i,j} in S of V0_ij
///              (the global offset -N delta/2 is dropped: a pure identity
///              shift, removed to avoid cancellation at GHz scales)
///   flip-flop  <S\{i} u {j}| H |S> = -V0_ij for i in S, j not in S
///   transverse <S u {i}| H |S> = Omega for ensemble i not in S,
///              present only while |S|+1 <= m_max
double hamiltonian_diagonal_offset(const HamiltonianSpec& spec);  // dropped constant
SparseOperator build_hamiltonian(const HamiltonianSpec& spec);

/// Collective coupling sqrt(n_c) * j_dd * angular / distance^3 (MHz); angular
/// is the (1 - 3 cos^2) factor of the qubit-centroid line, 1 when the qubit
/// sits in the plane perpendicular to the axis.
double effective_coupling_prediction(double n_c, double distance_nm, const PhysicalParams& params,
                                     double angular = 1.0);

}  // namespace spinsim
