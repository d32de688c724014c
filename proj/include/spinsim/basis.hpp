#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spinsim {

/// Number of configurations of n spins with at most m_max excited,
/// sum_{k=0}^{m_max} C(n,k). Throws std::overflow_error past ~2^62.
std::size_t truncated_dimension(int n, int m_max);

/// All spin configurations with <= m_max excitations over n_spins two-level
/// spins, each stored as the sorted set of excited spin indices. Ordering is
/// normative: by excitation count, then lexicographic on the index tuple, so
/// dumps and golden vectors are comparable across implementations.
class TruncatedBasis {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 200000;

  TruncatedBasis(int n_spins, int m_max, std::size_t dimension_cap = kDefaultDimensionCap);

  int n_spins() const { return n_; }
  int m_max() const { return m_max_; }
  std::size_t dimension() const { return dimension_; }

  /// Sorted excited-spin indices of basis state `idx`.
  std::span<const int> state(std::size_t idx) const;
  int excitation_count(std::size_t idx) const;

  /// Ordinal of the configuration with the given sorted excited set.
  /// Inverse of state(): index_of(state(i)) == i.
  std::size_t index_of(std::span<const int> excited) const;

  /// First basis index of the m-excitation manifold; manifold_begin(m_max+1)
  /// == dimension().
  std::size_t manifold_begin(int m) const;

 private:
  int n_ = 0;
  int m_max_ = 0;
  std::size_t dimension_ = 0;
  std::vector<std::size_t> manifold_offset_;      // size m_max_ + 2
  std::vector<int> flat_;                         // states concatenated per manifold
  std::vector<std::vector<std::size_t>> choose_;  // C(i,k) for ranking
};

}  // namespace spinsim
