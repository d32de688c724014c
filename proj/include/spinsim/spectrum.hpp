#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinsim/geometry.hpp"
#include "spinsim/sparse_op.hpp"
#include "spinsim/units.hpp"

namespace spinsim {

/// One eigenpair with its collective-enhancement bookkeeping:
///   n_c       = (sum over single-excitation basis states of the amplitude)^2
///   overlap_w = |<W|phi>|^2 = n_c / n
///   m_weight  = probability weight per excitation manifold (sums to 1)
struct EigenMode {
  double energy_mhz = 0.0;
  double n_c = 0.0;
  double overlap_w = 0.0;
  std::vector<double> m_weight;
  Eigen::VectorXd vector;
};

struct SpectrumResult {
  std::shared_ptr<const TruncatedBasis> basis;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // columns; sign-fixed (largest |entry| positive)
  std::vector<double> n_c;
  std::vector<double> overlap_w;
  Eigen::MatrixXd m_weight;  // (m_max+1) x modes
  int collective = -1;       // argmax n_c
  int vacuum = -1;           // argmax |<0|phi>|^2
  double max_residual = 0.0;  // |Hv - Ev| over spot-checked modes

  int mode_count() const { return static_cast<int>(energies.size()); }
  double max_n_c() const;
  EigenMode mode(int i) const;
};

struct DiagonalizeOptions {
  enum class Mode { Dense, Iterative };
  Mode mode = Mode::Dense;
  std::size_t dense_cap = 6000;
  // iterative: eigenpair count around the window center; when center is not
  // given the caller must supply it (typically delta + J).
  int k = 40;
  std::optional<double> window_center_mhz;
  std::optional<double> window_halfwidth_mhz;  // filter returned pairs if set
  double residual_tol = 1e-8;
};

class NoCollectiveMode : public std::runtime_error {
 public:
  explicit NoCollectiveMode(const std::string& what) : std::runtime_error(what) {}
};

/// Diagonalize and attach per-mode statistics. Dense mode refuses dimensions
/// above dense_cap; iterative mode runs shift-invert Lanczos about the window
/// center. Residuals are bounded by residual_tol * spectral scale.
SpectrumResult diagonalize(const SparseOperator& h, const DiagonalizeOptions& opts = {});

/// Statistics of one normalized vector in a basis (sign convention applied by
/// diagonalize, not here).
void mode_statistics(const TruncatedBasis& basis, const Eigen::VectorXd& v, double& n_c,
                     double& overlap_w, Eigen::VectorXd& m_weight);

/// E_collective - E_vacuum, the resonance target for the qubit splitting.
/// Throws NoCollectiveMode when the best n_c is below the floor.
double collective_mode_energy(const SpectrumResult& spec, double n_c_floor = 10.0);

struct OmegaSweepRow {
  double omega_mhz = 0.0;
  double max_n_c = 0.0;
  double e_c_mhz = 0.0;  // NaN when no collective mode clears the floor
  bool ok = true;
  std::string error;
};

/// Fig.-2-inset style sweep: diagonalize per Omega and report the strongest
/// mode. Rows that fail keep the sweep going and carry the error text.
std::vector<OmegaSweepRow> sweep_omega(const SpinGeometry& geom, const PhysicalParams& params,
                                       const std::vector<double>& omegas_mhz, int m_max,
                                       const DiagonalizeOptions& opts = {},
                                       double n_c_floor = 10.0);

struct TruncationReport {
  int m_low = 0, m_high = 0;
  double e_c_low_mhz = 0.0, e_c_high_mhz = 0.0;  // collective gap E_c - E_vac
  double n_c_low = 0.0, n_c_high = 0.0;
  double de_over_delta = 0.0;  // |e_c change| / delta
  double dn_c_rel = 0.0;       // |n_c change| / n_c_low
};

/// Convergence check against the next excitation manifold: compares the
/// collective gap and n_c between truncations m_low and m_high.
TruncationReport truncation_check(const SpinGeometry& geom, const PhysicalParams& params,
                                  int m_low = 2, int m_high = 3,
                                  const DiagonalizeOptions& opts = {});

}  // namespace spinsim
