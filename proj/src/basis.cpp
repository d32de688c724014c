#include "spinsim/basis.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace spinsim {

namespace {

constexpr std::size_t kOverflowGuard = std::numeric_limits<std::size_t>::max() / 4;

std::size_t binomial_checked(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > kOverflowGuard / static_cast<std::size_t>(n))
      throw std::overflow_error("binomial overflow");
    r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return r;
}

}  // namespace

std::size_t truncated_dimension(int n, int m_max) {
  if (n < 0 || m_max < 0 || m_max > n)
    throw std::invalid_argument("truncated_dimension: need 0 <= m_max <= n");
  std::size_t dim = 0;
  for (int k = 0; k <= m_max; ++k) {
    const std::size_t c = binomial_checked(n, k);
    if (dim > kOverflowGuard - c) throw std::overflow_error("truncated_dimension overflow");
    dim += c;
  }
  return dim;
}

TruncatedBasis::TruncatedBasis(int n_spins, int m_max, std::size_t dimension_cap)
    : n_(n_spins), m_max_(m_max) {
  if (n_ < 1) throw std::invalid_argument("TruncatedBasis: n_spins must be >= 1");
  if (m_max_ < 0 || m_max_ > n_)
    throw std::invalid_argument("TruncatedBasis: need 0 <= m_max <= n_spins");
  dimension_ = truncated_dimension(n_, m_max_);
  if (dimension_ > dimension_cap)
    throw std::invalid_argument("TruncatedBasis: dimension " + std::to_string(dimension_) +
                                " exceeds cap " + std::to_string(dimension_cap));

  choose_.assign(n_ + 1, std::vector<std::size_t>(m_max_ + 1, 0));
  for (int i = 0; i <= n_; ++i) {
    choose_[i][0] = 1;
    for (int k = 1; k <= m_max_ && k <= i; ++k)
      choose_[i][k] = (i == k) ? 1 : choose_[i - 1][k - 1] + choose_[i - 1][k];
  }

  manifold_offset_.assign(m_max_ + 2, 0);
  std::size_t flat_size = 0;
  for (int m = 0; m <= m_max_; ++m) {
    manifold_offset_[m + 1] = manifold_offset_[m] + choose_[n_][m];
    flat_size += choose_[n_][m] * static_cast<std::size_t>(m);
  }
  flat_.reserve(flat_size);

  // Enumerate each manifold in lexicographic order of the excited-index tuple.
  std::vector<int> cur;
  for (int m = 0; m <= m_max_; ++m) {
    cur.assign(m, 0);
    for (int i = 0; i < m; ++i) cur[i] = i;
    if (m == 0) continue;
    for (;;) {
      flat_.insert(flat_.end(), cur.begin(), cur.end());
      int i = m - 1;
      while (i >= 0 && cur[i] == n_ - m + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
}

std::span<const int> TruncatedBasis::state(std::size_t idx) const {
  const int m = excitation_count(idx);
  if (m == 0) return {};
  // States of manifold k occupy k * C(n,k) ints; compute the flat offset.
  std::size_t flat_off = 0;
  for (int k = 1; k < m; ++k)
    flat_off += static_cast<std::size_t>(k) * choose_[n_][k];
  const std::size_t within = idx - manifold_offset_[m];
  return {flat_.data() + flat_off + within * static_cast<std::size_t>(m),
          static_cast<std::size_t>(m)};
}

int TruncatedBasis::excitation_count(std::size_t idx) const {
  if (idx >= dimension_) throw std::out_of_range("TruncatedBasis: index out of range");
  int m = 0;
  while (idx >= manifold_offset_[m + 1]) ++m;
  return m;
}

std::size_t TruncatedBasis::index_of(std::span<const int> excited) const {
  const int m = static_cast<int>(excited.size());
  if (m > m_max_) throw std::out_of_range("TruncatedBasis: excitation count above m_max");
  // Lexicographic rank of the m-combination: count combinations that start
  // with a smaller element at each position.
  std::size_t rank = 0;
  int prev = -1;
  for (int i = 0; i < m; ++i) {
    const int a = excited[i];
    if (a <= prev || a >= n_) throw std::out_of_range("TruncatedBasis: bad excited set");
    for (int b = prev + 1; b < a; ++b) rank += choose_[n_ - 1 - b][m - 1 - i];
    prev = a;
  }
  return manifold_offset_[m] + rank;
}

std::size_t TruncatedBasis::manifold_begin(int m) const {
  if (m < 0 || m > m_max_ + 1) throw std::out_of_range("TruncatedBasis: bad manifold");
  return manifold_offset_[m];
}

}  // namespace spinsim
