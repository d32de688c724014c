// Test-only brute-force constructions, kept independent of the library's
// combinatorial basis machinery: the full 2^n Hilbert space assembled from
// literal Kronecker products of 2x2 matrices. Bit i of a basis index means
// spin i is excited.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "spinsim/basis.hpp"
#include "spinsim/geometry.hpp"
#include "spinsim/units.hpp"

namespace oracle {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// 2x2 op embedded at `site` of n sites; site 0 owns the least-significant bit.
Eigen::MatrixXd site_operator(const Eigen::Matrix2d& op, int site, int n);

extern const Eigen::Matrix2d kSigmaZ;   // diag(-1, +1): excited has +1
extern const Eigen::Matrix2d kSigmaX;
extern const Eigen::Matrix2d kSigmaPlus;
extern const Eigen::Matrix2d kSigmaMinus;
extern const Eigen::Matrix2d kProjExcited;  // (1 + sigma_z)/2

/// Full-space Hamiltonian with the same offset convention as the library
/// (diagonal counts excitations times the splitting). When include_qubit is
/// set the qubit is site n with splitting qubit_delta and no transverse term.
Eigen::MatrixXd full_hamiltonian(const spinsim::SpinGeometry& geom,
                                 const spinsim::PhysicalParams& params,
                                 bool include_qubit = false, double qubit_delta_mhz = 0.0);

/// bitmask_of[truncated_index] -> full-space index, for m_max = n comparisons.
std::vector<std::size_t> bitmask_of_truncated(const spinsim::TruncatedBasis& basis);

}  // namespace oracle
