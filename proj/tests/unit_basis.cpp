#include <doctest.h>

#include <complex>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "spinsim/basis.hpp"
#include "spinsim/state.hpp"

using namespace spinsim;

TEST_CASE("truncated dimensions") {
  CHECK(truncated_dimension(100, 2) == 5051);
  CHECK(truncated_dimension(101, 2) == 5152);
  CHECK(truncated_dimension(3, 3) == 8);
  CHECK(truncated_dimension(5, 0) == 1);
  CHECK(TruncatedBasis(100, 2).dimension() == 5051);
  CHECK(TruncatedBasis(3, 3).dimension() == 8);
  CHECK(TruncatedBasis(5, 0).dimension() == 1);
}

TEST_CASE("dimension cap rejects huge bases") {
  // C(100,5) ~ 7.5e7 blows the default 2e5 cap
  CHECK_THROWS_AS(TruncatedBasis(100, 5), std::invalid_argument);
  CHECK_NOTHROW(TruncatedBasis(100, 5, 80'000'000));
}

TEST_CASE("states are ordered by excitation count then lexicographically") {
  const TruncatedBasis b(4, 2);
  REQUIRE(b.dimension() == 11);
  CHECK(b.state(0).empty());
  const std::vector<std::vector<int>> expect_m1 = {{0}, {1}, {2}, {3}};
  for (int i = 0; i < 4; ++i) {
    const auto s = b.state(1 + i);
    CHECK(std::vector<int>(s.begin(), s.end()) == expect_m1[i]);
  }
  const std::vector<std::vector<int>> expect_m2 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int i = 0; i < 6; ++i) {
    const auto s = b.state(5 + i);
    CHECK(std::vector<int>(s.begin(), s.end()) == expect_m2[i]);
  }
}

TEST_CASE("index_of inverts state() across the whole basis") {
  const TruncatedBasis b(8, 3);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    CHECK(b.index_of(b.state(i)) == i);
    CHECK(b.excitation_count(i) == static_cast<int>(b.state(i).size()));
  }
}

TEST_CASE("manifold offsets") {
  const TruncatedBasis b(6, 2);
  CHECK(b.manifold_begin(0) == 0);
  CHECK(b.manifold_begin(1) == 1);
  CHECK(b.manifold_begin(2) == 7);
  CHECK(b.manifold_begin(3) == b.dimension());
}

TEST_CASE("W state") {
  SUBCASE("n = 4: four amplitudes of 0.5") {
    const auto b = std::make_shared<TruncatedBasis>(4, 2);
    const StateVector w = w_state(b);
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < 4; ++i)
      CHECK(w.amplitudes(1 + i) == std::complex<double>(0.5, 0.0));
    CHECK(w.amplitudes(0) == std::complex<double>(0.0, 0.0));
  }
  SUBCASE("n = 1 reduces to |1>") {
    const auto b = std::make_shared<TruncatedBasis>(1, 1);
    const StateVector w = w_state(b);
    CHECK(std::abs(w.amplitudes(1) - 1.0) < 1e-15);
  }
  SUBCASE("m_max = 0 cannot hold a W state") {
    CHECK_THROWS_AS(w_state(std::make_shared<TruncatedBasis>(4, 0)), std::invalid_argument);
  }
}

TEST_CASE("sigma_z expectation on the W state") {
  const int n = 100;
  const auto b = std::make_shared<TruncatedBasis>(n, 1);
  const StateVector w = w_state(b);
  const SigmaResult r = apply_sigma(PauliKind::Z, 3, w);
  CHECK(r.leaked_weight == 0.0);
  const auto overlap = inner(w, r.state);
  CHECK(overlap.real() == doctest::Approx(2.0 / n - 1.0).epsilon(1e-12));
  CHECK(overlap.imag() == 0.0);
}

TEST_CASE("raising and lowering edge cases") {
  const auto b = std::make_shared<TruncatedBasis>(5, 2);
  const StateVector vac = zero_state(b);
  SUBCASE("sigma_minus annihilates the vacuum") {
    const SigmaResult r = apply_sigma(PauliKind::Minus, 2, vac);
    CHECK(r.state.amplitudes.norm() == 0.0);
    CHECK(r.leaked_weight == 0.0);
  }
  SUBCASE("sigma_plus then sigma_minus returns the vacuum") {
    const SigmaResult up = apply_sigma(PauliKind::Plus, 2, vac);
    const SigmaResult down = apply_sigma(PauliKind::Minus, 2, up.state);
    CHECK((down.state.amplitudes - vac.amplitudes).norm() < 1e-15);
  }
  SUBCASE("raising past m_max drops weight and reports it") {
    StateVector top{b, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b->dimension()))};
    const int pair01[] = {0, 1};
    top.amplitudes(static_cast<Eigen::Index>(b->index_of(pair01))) = 1.0;
    const SigmaResult r = apply_sigma(PauliKind::Plus, 4, top);
    CHECK(r.state.amplitudes.norm() == 0.0);
    CHECK(r.leaked_weight == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("spin index out of range") {
    CHECK_THROWS_AS(apply_sigma(PauliKind::Z, 5, vac), std::out_of_range);
  }
}

TEST_CASE("no leakage when the basis is complete") {
  const int n = 6;
  const auto b = std::make_shared<TruncatedBasis>(n, n);
  std::mt19937_64 rng(5);
  StateVector psi{b, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b->dimension()))};
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
    psi.amplitudes(i) = {static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                         static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
  psi.amplitudes.normalize();
  for (const PauliKind kind : {PauliKind::Z, PauliKind::Plus, PauliKind::Minus, PauliKind::X})
    for (int spin = 0; spin < n; ++spin)
      CHECK(apply_sigma(kind, spin, psi).leaked_weight == 0.0);
}

TEST_CASE("Pauli action matches the dense tensor-product oracle") {
  const int n = 6;
  const auto b = std::make_shared<TruncatedBasis>(n, n);
  const auto mask_of = oracle::bitmask_of_truncated(*b);
  std::mt19937_64 rng(21);
  StateVector psi{b, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b->dimension()))};
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
    psi.amplitudes(i) = {static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                         static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
  psi.amplitudes.normalize();

  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(1 << n);
  for (std::size_t i = 0; i < b->dimension(); ++i)
    full(static_cast<Eigen::Index>(mask_of[i])) = psi.amplitudes(static_cast<Eigen::Index>(i));

  const std::pair<PauliKind, Eigen::Matrix2d> ops[] = {{PauliKind::Z, oracle::kSigmaZ},
                                                       {PauliKind::Plus, oracle::kSigmaPlus},
                                                       {PauliKind::Minus, oracle::kSigmaMinus},
                                                       {PauliKind::X, oracle::kSigmaX}};
  for (const auto& [kind, mat] : ops)
    for (int spin = 0; spin < n; ++spin) {
      const SigmaResult ours = apply_sigma(kind, spin, psi);
      const Eigen::VectorXcd expect = oracle::site_operator(mat, spin, n) * full;
      for (std::size_t i = 0; i < b->dimension(); ++i)
        CHECK(std::abs(ours.state.amplitudes(static_cast<Eigen::Index>(i)) -
                       expect(static_cast<Eigen::Index>(mask_of[i]))) < 1e-12);
    }
}
