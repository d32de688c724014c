#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinsim/units.hpp"

using namespace spinsim;

TEST_CASE("default NV parameters") {
  const PhysicalParams p = default_nv_params();
  CHECK(p.delta_mhz == 4000.0);
  CHECK(p.omega_mhz == 110.0);
  // mu0 (g_e mu_B)^2 / (4 pi h) ~ 52 MHz nm^3
  CHECK(p.j_dd_mhz_nm3 == computed_j_dd_mhz_nm3());
  CHECK(std::abs(p.j_dd_mhz_nm3 - 52.0) < 0.1);
  CHECK(p.omega_ext_mhz == 0.0);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("dipolar constant SI round trip") {
  const double j = computed_j_dd_mhz_nm3();
  const double back = j_dd_from_si(j_dd_to_si(j));
  CHECK(std::abs(back - j) <= 1e-12 * j);
}

TEST_CASE("perturbative J") {
  PhysicalParams p = default_nv_params();
  CHECK(perturbative_j(p, 100) == doctest::Approx(302.5).epsilon(1e-12));
  CHECK(perturbative_j(p, 1) == doctest::Approx(3.025).epsilon(1e-12));
  p.omega_mhz = 0.0;
  CHECK(perturbative_j(p, 100) == 0.0);

  PhysicalParams bad = p;
  bad.delta_mhz = 0.0;
  CHECK_THROWS_AS(perturbative_j(bad, 10), std::invalid_argument);
}

TEST_CASE("perturbative J scaling is exact") {
  PhysicalParams p = default_nv_params();
  for (double omega : {3.7, 110.0, 251.0}) {
    p.omega_mhz = omega;
    const double j1 = perturbative_j(p, 50);
    CHECK(perturbative_j(p, 100) == 2.0 * j1);  // linear in N
    PhysicalParams p2 = p;
    p2.omega_mhz = 2.0 * omega;
    CHECK(perturbative_j(p2, 50) == 4.0 * j1);  // quadratic in Omega
  }
}

TEST_CASE("hierarchy check: paper-scale parameters pass") {
  PhysicalParams p = default_nv_params();
  p.omega_ext_mhz = 0.1;
  const HierarchyReport r = check_hierarchy(p, 100, 1.2);
  CHECK(r.pass_delta_j);
  CHECK(r.pass_j_vdd);
  CHECK(r.pass_vdd_ext);
  CHECK(r.perturbative_ratio == doctest::Approx(0.275).epsilon(1e-12));
  CHECK(r.perturbative_ok);
  CHECK(r.all_pass());
}

TEST_CASE("hierarchy check: strong field breaks perturbation theory") {
  PhysicalParams p = default_nv_params();
  p.omega_mhz = 1000.0;
  p.omega_ext_mhz = 0.1;
  const HierarchyReport r = check_hierarchy(p, 100, 1.2);
  CHECK(r.perturbative_ratio == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_FALSE(r.perturbative_ok);
}

TEST_CASE("hierarchy check: zero field fails J >> V_dd") {
  PhysicalParams p = default_nv_params();
  p.omega_mhz = 0.0;
  const HierarchyReport r = check_hierarchy(p, 100, 1.2);
  CHECK(r.j_mhz == 0.0);
  CHECK_FALSE(r.pass_j_vdd);
}

TEST_CASE("hierarchy check: omega_ext = 0 reports an infinite ratio") {
  const HierarchyReport r = check_hierarchy(default_nv_params(), 100, 1.2);
  CHECK(std::isinf(r.ratio_vdd_ext));
  CHECK(r.pass_vdd_ext);
}

TEST_CASE("parameter validation catches each violation") {
  PhysicalParams p = default_nv_params();
  p.delta_mhz = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_nv_params();
  p.j_dd_mhz_nm3 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_nv_params();
  p.t2_us = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_nv_params();
  p.t2_us = std::numeric_limits<double>::infinity();
  CHECK_NOTHROW(p.validate());
}
