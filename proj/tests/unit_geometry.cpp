#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "spinsim/geometry.hpp"

using namespace spinsim;

TEST_CASE("sampling is deterministic in the seed") {
  const SpinGeometry a = sample_ensemble(40, 20.0, 7, 1.0);
  const SpinGeometry b = sample_ensemble(40, 20.0, 7, 1.0);
  REQUIRE(a.n_spins() == b.n_spins());
  for (int i = 0; i < a.n_spins(); ++i) CHECK(a.positions_nm[i] == b.positions_nm[i]);
  const SpinGeometry c = sample_ensemble(40, 20.0, 8, 1.0);
  CHECK(a.positions_nm[0] != c.positions_nm[0]);
}

TEST_CASE("single spin needs no pair constraint") {
  const SpinGeometry g = sample_ensemble(1, 20.0, 3, 5.0);
  CHECK(g.n_spins() == 1);
  CHECK(g.positions_nm[0].norm() <= 10.0);
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("paper-scale ensemble: inside ball, min separation, NN distance") {
  const SpinGeometry g = sample_ensemble(100, 20.0, 1, 1.0);
  CHECK_NOTHROW(g.validate());
  for (const auto& p : g.positions_nm) CHECK(p.norm() <= 10.0);
  const double mean_nn = mean_nearest_neighbor_distance(g);
  CHECK(mean_nn > 2.0);
  CHECK(mean_nn < 4.0);
  // typical nearest-neighbor dipolar coupling ~ MHz
  const double v_dd = median_nn_coupling(g, default_nv_params());
  CHECK(v_dd > 0.1);
  CHECK(v_dd < 20.0);
}

TEST_CASE("infeasible packing reports an error") {
  CHECK_THROWS_AS(sample_ensemble(100, 2.0, 1, 5.0), std::runtime_error);
}

TEST_CASE("dipolar coupling hand values") {
  const Eigen::Vector3d z(0, 0, 1);
  SUBCASE("perpendicular separation") {
    const double v = dipolar_coupling({0, 0, 0}, {3, 0, 0}, z, 52.0);
    CHECK(v == doctest::Approx(52.0 / 27.0).epsilon(1e-12));
  }
  SUBCASE("magic angle") {
    const double c = 1.0 / std::sqrt(3.0);
    const double s = std::sqrt(1.0 - c * c);
    const Eigen::Vector3d p2 = 3.0 * Eigen::Vector3d(s, 0, c);
    CHECK(std::abs(dipolar_coupling({0, 0, 0}, p2, z, 52.0)) < 1e-12);
  }
  SUBCASE("along the axis") {
    const double v = dipolar_coupling({0, 0, 0}, {0, 0, 3}, z, 52.0);
    CHECK(v == doctest::Approx(-2.0 * 52.0 / 27.0).epsilon(1e-12));
  }
  SUBCASE("coincident points rejected") {
    CHECK_THROWS_AS(dipolar_coupling({1, 2, 3}, {1, 2, 3}, z, 52.0), std::invalid_argument);
  }
}

TEST_CASE("coupling symmetry and cubic scaling are exact") {
  std::mt19937_64 rng(11);
  auto u = [&] { return 10.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5); };
  const Eigen::Vector3d z(0, 0, 1);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector3d p1(u(), u(), u()), p2(u(), u(), u());
    if ((p1 - p2).norm() < 1e-6) continue;
    CHECK(dipolar_coupling(p1, p2, z, 52.0) == dipolar_coupling(p2, p1, z, 52.0));
    CHECK(dipolar_coupling(2 * p1, 2 * p2, z, 52.0) == dipolar_coupling(p1, p2, z, 52.0) / 8.0);
  }
}

TEST_CASE("couplings are invariant under a common rotation") {
  std::mt19937_64 rng(13);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const SpinGeometry g = sample_ensemble(12, 10.0, 5, 0.5);
  for (int k = 0; k < 10; ++k) {
    const double angle = 6.28318530717958648 * u();
    Eigen::Vector3d ax(u() - 0.5, u() - 0.5, u() - 0.5);
    ax.normalize();
    const Eigen::AngleAxisd rot(angle, ax);
    for (int i = 0; i < g.n_spins(); ++i)
      for (int j = i + 1; j < g.n_spins(); ++j) {
        const double v0 = dipolar_coupling(g.positions_nm[i], g.positions_nm[j], g.axis, 52.0);
        const double v1 = dipolar_coupling(rot * g.positions_nm[i], rot * g.positions_nm[j],
                                           rot * g.axis, 52.0);
        CHECK(v1 == doctest::Approx(v0).epsilon(1e-10));
      }
  }
}

TEST_CASE("angular factor averages to zero over the sphere") {
  std::mt19937_64 rng(17);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int samples = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double cos_t = 2.0 * u() - 1.0;  // uniform direction on the sphere
    const double f = 1.0 - 3.0 * cos_t * cos_t;
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean) < 3.5 * se);
}

TEST_CASE("coupling matrix structure") {
  const PhysicalParams params = default_nv_params();
  SUBCASE("two spins, one independent entry") {
    SpinGeometry g;
    g.positions_nm = {{0, 0, 0}, {3, 0, 0}};
    const CouplingMatrix cm = build_couplings(g, params);
    CHECK(cm.v0_mhz(0, 0) == 0.0);
    CHECK(cm.v0_mhz(1, 1) == 0.0);
    CHECK(cm.v0_mhz(0, 1) == cm.v0_mhz(1, 0));
    CHECK(cm.v0_mhz(0, 1) ==
          dipolar_coupling(g.positions_nm[0], g.positions_nm[1], g.axis, params.j_dd_mhz_nm3));
    CHECK_FALSE(cm.v_qubit_mhz.has_value());
  }
  SUBCASE("remote qubit couplings ~ j_dd / R^3") {
    SpinGeometry g = sample_ensemble(100, 20.0, 1, 1.0);
    g = place_qubit(g, 100.0, {1, 0, 0});
    const CouplingMatrix cm = build_couplings(g, params);
    REQUIRE(cm.v_qubit_mhz.has_value());
    const double bare = params.j_dd_mhz_nm3 / 1e6;
    std::vector<double> mags;
    for (int i = 0; i < 100; ++i) {
      const double m = std::abs((*cm.v_qubit_mhz)(i));
      CHECK(m > 0.6 * bare);
      CHECK(m < 1.6 * bare);
      mags.push_back(m);
    }
    std::sort(mags.begin(), mags.end());
    const double median = 0.5 * (mags[49] + mags[50]);
    CHECK(median == doctest::Approx(bare).epsilon(0.10));
  }
}

TEST_CASE("qubit placement") {
  SpinGeometry g = sample_ensemble(20, 20.0, 2, 1.0);
  SUBCASE("at distance R from the centroid") {
    const SpinGeometry q = place_qubit(g, 100.0, {1, 0, 0});
    REQUIRE(q.qubit_position_nm.has_value());
    CHECK(qubit_centroid_distance(q) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(qubit_angular_factor(q) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(near_field(q));
  }
  SUBCASE("zero distance rejected") {
    CHECK_THROWS_AS(place_qubit(g, 0.0, {1, 0, 0}), std::invalid_argument);
  }
  SUBCASE("close placement allowed but flagged near-field") {
    const SpinGeometry q = place_qubit(g, 15.0, {1, 0, 0});
    CHECK(near_field(q));
  }
}

TEST_CASE("geometry text records round-trip exactly") {
  SpinGeometry g = sample_ensemble(17, 20.0, 23, 1.0);
  g = place_qubit(g, 80.0, {0, 1, 0});
  std::stringstream ss;
  save_geometry(ss, g);
  const SpinGeometry r = load_geometry(ss);
  REQUIRE(r.n_spins() == g.n_spins());
  for (int i = 0; i < g.n_spins(); ++i) CHECK(r.positions_nm[i] == g.positions_nm[i]);
  CHECK(r.axis == g.axis);
  CHECK(r.seed == g.seed);
  CHECK(r.min_separation_nm == g.min_separation_nm);
  CHECK(r.sample_diameter_nm == g.sample_diameter_nm);
  REQUIRE(r.qubit_position_nm.has_value());
  CHECK(*r.qubit_position_nm == *g.qubit_position_nm);
}

TEST_CASE("validation catches a broken axis and min-separation violations") {
  SpinGeometry g = sample_ensemble(5, 10.0, 3, 1.0);
  SpinGeometry bad_axis = g;
  bad_axis.axis = {0, 0, 2};
  CHECK_THROWS_AS(bad_axis.validate(), std::invalid_argument);
  SpinGeometry overlap = g;
  overlap.positions_nm.push_back(overlap.positions_nm[0] + Eigen::Vector3d(1e-4, 0, 0));
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);
}
