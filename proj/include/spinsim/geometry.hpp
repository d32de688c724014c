#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "spinsim/units.hpp"

namespace spinsim {

/// Positions (nm) of an ensemble sampled inside a ball, all spins sharing one
/// quantization axis, plus an optional remote qubit position.
struct SpinGeometry {
  std::vector<Eigen::Vector3d> positions_nm;
  Eigen::Vector3d axis{0.0, 0.0, 1.0};
  std::optional<Eigen::Vector3d> qubit_position_nm;
  std::uint64_t seed = 0;
  double min_separation_nm = 0.0;
  double sample_diameter_nm = 0.0;  // 0 when unknown (e.g. hand-built)

  int n_spins() const { return static_cast<int>(positions_nm.size()); }
  Eigen::Vector3d centroid() const;

  /// Checks: unit axis, pairwise min separation, positions inside the sampling
  /// ball (when sample_diameter_nm > 0). Throws std::invalid_argument.
  void validate() const;
};

/// Uniform i.i.d. positions in a ball of the given diameter centered at the
/// origin; each point is redrawn until it clears min_separation from all
/// previously accepted ones. Deterministic in seed. Throws after 1e6 failed
/// draws (packing infeasible).
SpinGeometry sample_ensemble(int n, double diameter_nm, std::uint64_t seed,
                             double min_separation_nm = 1.0);

/// j_dd * (1 - 3 cos^2 theta) / d^3, theta measured from `axis` (assumed unit).
/// Throws on coincident points.
double dipolar_coupling(const Eigen::Vector3d& p1_nm, const Eigen::Vector3d& p2_nm,
                        const Eigen::Vector3d& axis, double j_dd_mhz_nm3);

struct CouplingMatrix {
  Eigen::MatrixXd v0_mhz;                        // symmetric, zero diagonal
  std::optional<Eigen::VectorXd> v_qubit_mhz;    // qubit-ensemble couplings
};

CouplingMatrix build_couplings(const SpinGeometry& geom, const PhysicalParams& params);

/// Qubit placed at centroid + distance * direction. Throws if distance <= 0.
SpinGeometry place_qubit(SpinGeometry geom, double distance_nm, const Eigen::Vector3d& direction);

/// True when the qubit sits closer to the centroid than the sampling diameter;
/// the asymptotic collective-coupling picture degrades there.
bool near_field(const SpinGeometry& geom);

/// Distance from the qubit to the ensemble centroid and the dipolar angular
/// factor (1 - 3 cos^2 theta) of the qubit-centroid line.
double qubit_centroid_distance(const SpinGeometry& geom);
double qubit_angular_factor(const SpinGeometry& geom);

/// Per-spin nearest-neighbor distances (nm).
std::vector<double> nearest_neighbor_distances(const SpinGeometry& geom);
double mean_nearest_neighbor_distance(const SpinGeometry& geom);

/// Median over spins of |V0(i, nearest neighbor of i)|; the typical dipolar
/// scale fed to the hierarchy check.
double median_nn_coupling(const SpinGeometry& geom, const PhysicalParams& params);

/// Plain-text records, one spin per line "x y z" (nm); axis/qubit/seed carried
/// on '#'-prefixed header lines. Round-trips exactly.
void save_geometry(std::ostream& os, const SpinGeometry& geom);
void save_geometry(const std::filesystem::path& path, const SpinGeometry& geom);
SpinGeometry load_geometry(std::istream& is);
SpinGeometry load_geometry(const std::filesystem::path& path);

}  // namespace spinsim
