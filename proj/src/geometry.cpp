#include "spinsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinsim {

namespace {

// Raw-bit uniform in [0,1); avoids std::uniform_real_distribution so streams
// are identical across standard libraries.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::Vector3d sample_in_ball(std::mt19937_64& rng, double radius) {
  for (;;) {
    const double x = 2.0 * uniform_unit(rng) - 1.0;
    const double y = 2.0 * uniform_unit(rng) - 1.0;
    const double z = 2.0 * uniform_unit(rng) - 1.0;
    if (x * x + y * y + z * z <= 1.0) return radius * Eigen::Vector3d(x, y, z);
  }
}

}  // namespace

Eigen::Vector3d SpinGeometry::centroid() const {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : positions_nm) c += p;
  return positions_nm.empty() ? c : Eigen::Vector3d(c / static_cast<double>(positions_nm.size()));
}

void SpinGeometry::validate() const {
  if (positions_nm.empty()) throw std::invalid_argument("geometry: no spins");
  if (std::abs(axis.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("geometry: axis must be a unit vector");
  const int n = n_spins();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = (positions_nm[i] - positions_nm[j]).norm();
      if (d < min_separation_nm)
        throw std::invalid_argument("geometry: pair below min separation");
    }
  if (sample_diameter_nm > 0.0) {
    const double r = sample_diameter_nm / 2.0;
    for (const auto& p : positions_nm)
      if (p.norm() > r * (1.0 + 1e-12))
        throw std::invalid_argument("geometry: position outside sampling ball");
  }
}

SpinGeometry sample_ensemble(int n, double diameter_nm, std::uint64_t seed,
                             double min_separation_nm) {
  if (n < 1) throw std::invalid_argument("sample_ensemble: n must be >= 1");
  if (!(diameter_nm > 0.0)) throw std::invalid_argument("sample_ensemble: diameter must be > 0");
  if (min_separation_nm < 0.0)
    throw std::invalid_argument("sample_ensemble: min_separation must be >= 0");

  SpinGeometry geom;
  geom.seed = seed;
  geom.min_separation_nm = min_separation_nm;
  geom.sample_diameter_nm = diameter_nm;
  geom.positions_nm.reserve(n);

  std::mt19937_64 rng(seed);
  const double radius = diameter_nm / 2.0;
  constexpr long kMaxAttempts = 1'000'000;
  long attempts = 0;
  while (geom.n_spins() < n) {
    if (++attempts > kMaxAttempts)
      throw std::runtime_error("sample_ensemble: packing infeasible (1e6 rejected draws)");
    const Eigen::Vector3d p = sample_in_ball(rng, radius);
    bool ok = true;
    for (const auto& q : geom.positions_nm)
      if ((p - q).norm() < min_separation_nm) {
        ok = false;
        break;
      }
    if (ok) geom.positions_nm.push_back(p);
  }
  return geom;
}

double dipolar_coupling(const Eigen::Vector3d& p1_nm, const Eigen::Vector3d& p2_nm,
                        const Eigen::Vector3d& axis, double j_dd_mhz_nm3) {
  const Eigen::Vector3d r = p2_nm - p1_nm;
  const double d = r.norm();
  if (d == 0.0) throw std::invalid_argument("dipolar_coupling: coincident points");
  const double cos_theta = axis.dot(r) / d;
  return j_dd_mhz_nm3 * (1.0 - 3.0 * cos_theta * cos_theta) / (d * d * d);
}

CouplingMatrix build_couplings(const SpinGeometry& geom, const PhysicalParams& params) {
  const int n = geom.n_spins();
  CouplingMatrix cm;
  cm.v0_mhz = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = dipolar_coupling(geom.positions_nm[i], geom.positions_nm[j], geom.axis,
                                        params.j_dd_mhz_nm3);
      cm.v0_mhz(i, j) = v;
      cm.v0_mhz(j, i) = v;
    }
  if (geom.qubit_position_nm) {
    Eigen::VectorXd vq(n);
    for (int i = 0; i < n; ++i)
      vq(i) = dipolar_coupling(*geom.qubit_position_nm, geom.positions_nm[i], geom.axis,
                               params.j_dd_mhz_nm3);
    cm.v_qubit_mhz = std::move(vq);
  }
  return cm;
}

SpinGeometry place_qubit(SpinGeometry geom, double distance_nm, const Eigen::Vector3d& direction) {
  if (!(distance_nm > 0.0)) throw std::invalid_argument("place_qubit: distance must be > 0");
  const double dn = direction.norm();
  if (dn == 0.0) throw std::invalid_argument("place_qubit: zero direction");
  geom.qubit_position_nm = geom.centroid() + distance_nm * (direction / dn);
  return geom;
}

bool near_field(const SpinGeometry& geom) {
  if (!geom.qubit_position_nm || geom.sample_diameter_nm <= 0.0) return false;
  return qubit_centroid_distance(geom) < geom.sample_diameter_nm;
}

double qubit_centroid_distance(const SpinGeometry& geom) {
  if (!geom.qubit_position_nm) throw std::invalid_argument("no qubit placed");
  return (*geom.qubit_position_nm - geom.centroid()).norm();
}

double qubit_angular_factor(const SpinGeometry& geom) {
  if (!geom.qubit_position_nm) throw std::invalid_argument("no qubit placed");
  const Eigen::Vector3d r = *geom.qubit_position_nm - geom.centroid();
  const double d = r.norm();
  if (d == 0.0) throw std::invalid_argument("qubit on centroid");
  const double c = geom.axis.dot(r) / d;
  return 1.0 - 3.0 * c * c;
}

std::vector<double> nearest_neighbor_distances(const SpinGeometry& geom) {
  const int n = geom.n_spins();
  std::vector<double> nn(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      nn[i] = std::min(nn[i], (geom.positions_nm[i] - geom.positions_nm[j]).norm());
    }
  return nn;
}

double mean_nearest_neighbor_distance(const SpinGeometry& geom) {
  const auto nn = nearest_neighbor_distances(geom);
  double s = 0.0;
  for (double d : nn) s += d;
  return s / static_cast<double>(nn.size());
}

double median_nn_coupling(const SpinGeometry& geom, const PhysicalParams& params) {
  const int n = geom.n_spins();
  if (n < 2) return 0.0;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    int jmin = -1;
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (geom.positions_nm[i] - geom.positions_nm[j]).norm();
      if (d < dmin) {
        dmin = d;
        jmin = j;
      }
    }
    vals[i] = std::abs(dipolar_coupling(geom.positions_nm[i], geom.positions_nm[jmin], geom.axis,
                                        params.j_dd_mhz_nm3));
  }
  std::sort(vals.begin(), vals.end());
  const int mid = n / 2;
  return (n % 2 == 1) ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
}

namespace {

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_geometry(std::ostream& os, const SpinGeometry& geom) {
  os << "# spinsim geometry 1\n";
  os << "# seed " << geom.seed << "\n";
  os << "# min_separation_nm " << fmt_full(geom.min_separation_nm) << "\n";
  os << "# diameter_nm " << fmt_full(geom.sample_diameter_nm) << "\n";
  os << "# axis " << fmt_full(geom.axis.x()) << " " << fmt_full(geom.axis.y()) << " "
     << fmt_full(geom.axis.z()) << "\n";
  if (geom.qubit_position_nm) {
    const auto& q = *geom.qubit_position_nm;
    os << "# qubit " << fmt_full(q.x()) << " " << fmt_full(q.y()) << " " << fmt_full(q.z())
       << "\n";
  }
  for (const auto& p : geom.positions_nm)
    os << fmt_full(p.x()) << " " << fmt_full(p.y()) << " " << fmt_full(p.z()) << "\n";
}

void save_geometry(const std::filesystem::path& path, const SpinGeometry& geom) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_geometry: cannot open " + path.string());
  save_geometry(os, geom);
}

SpinGeometry load_geometry(std::istream& is) {
  SpinGeometry geom;
  geom.axis = Eigen::Vector3d(0, 0, 1);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "seed") {
        ls >> geom.seed;
      } else if (key == "min_separation_nm") {
        ls >> geom.min_separation_nm;
      } else if (key == "diameter_nm") {
        ls >> geom.sample_diameter_nm;
      } else if (key == "axis") {
        ls >> geom.axis.x() >> geom.axis.y() >> geom.axis.z();
      } else if (key == "qubit") {
        Eigen::Vector3d q;
        ls >> q.x() >> q.y() >> q.z();
        geom.qubit_position_nm = q;
      }
      continue;
    }
    Eigen::Vector3d p;
    if (!(ls >> p.x() >> p.y() >> p.z()))
      throw std::runtime_error("load_geometry: malformed record: " + line);
    geom.positions_nm.push_back(p);
  }
  if (geom.positions_nm.empty()) throw std::runtime_error("load_geometry: no spins");
  return geom;
}

SpinGeometry load_geometry(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_geometry: cannot open " + path.string());
  return load_geometry(is);
}

}  // namespace spinsim
