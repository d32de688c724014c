#include "spinsim/decoherence.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include "spinsim/basis.hpp"
#include "spinsim/state.hpp"

namespace spinsim {

double dephasing_leak_probability(int n) {
  if (n < 1) throw std::invalid_argument("dephasing_leak_probability: n must be >= 1");
  const double nn = static_cast<double>(n);
  return (4.0 / nn) * (1.0 - 1.0 / nn);
}

double flip_down_probability(int n) {
  if (n < 1) throw std::invalid_argument("flip_down_probability: n must be >= 1");
  return 1.0 / static_cast<double>(n);
}

JumpEstimate monte_carlo_jump_oracle(int n, JumpKind kind, int samples, std::uint64_t seed) {
  if (samples < 10000)
    throw std::invalid_argument("monte_carlo_jump_oracle: needs samples >= 1e4");
  const auto basis = std::make_shared<TruncatedBasis>(n, std::min(n, 1));
  const StateVector w = w_state(basis);

  std::mt19937_64 rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int spin = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    double value = 0.0;
    if (kind == JumpKind::Dephase) {
      const SigmaResult jumped = apply_sigma(PauliKind::Z, spin, w);
      const double nrm2 = jumped.state.amplitudes.squaredNorm();
      value = 1.0 - std::norm(inner(w, jumped.state)) / nrm2;
    } else {
      const SigmaResult jumped = apply_sigma(PauliKind::Minus, spin, w);
      value = std::norm(jumped.state.amplitudes(0));  // weight on |0>
    }
    sum += value;
    sum_sq += value * value;
  }
  JumpEstimate est;
  est.samples = samples;
  est.mean = sum / samples;
  const double var = std::max(0.0, sum_sq / samples - est.mean * est.mean);
  est.std_error = std::sqrt(var / samples);
  return est;
}

double gate_error(double t_pi_us, double t2_eff_us, int n_swaps) {
  if (!(t_pi_us > 0.0) || !(t2_eff_us > 0.0) || n_swaps < 1)
    throw std::invalid_argument("gate_error: arguments must be positive");
  const double x = static_cast<double>(n_swaps) * t_pi_us / t2_eff_us;
  return 1.0 - std::exp(-x * x * x);
}

double required_t2(double epsilon, double t_pi_us, int n_swaps) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("required_t2: epsilon must be in (0,1)");
  if (!(t_pi_us > 0.0) || n_swaps < 1)
    throw std::invalid_argument("required_t2: arguments must be positive");
  return static_cast<double>(n_swaps) * t_pi_us / std::cbrt(-std::log1p(-epsilon));
}

double collective_swap_time(double n_c, double distance_nm, const PhysicalParams& params,
                            EnhancementMode mode, double angular) {
  if (!(n_c >= 1.0)) throw std::invalid_argument("collective_swap_time: n_c must be >= 1");
  if (!(distance_nm > 0.0))
    throw std::invalid_argument("collective_swap_time: distance must be > 0");
  const double enh = mode == EnhancementMode::N ? n_c : std::sqrt(n_c);
  const double v = enh * params.j_dd_mhz_nm3 * angular / (distance_nm * distance_nm * distance_nm);
  return 1.0 / (4.0 * v);
}

ErrorBudget make_error_budget(int n, double t_pi_us, const PhysicalParams& params,
                              double epsilon, int n_swaps, EnhancementMode mode) {
  ErrorBudget b;
  b.n = n;
  b.p_dephase_leak = dephasing_leak_probability(n);
  b.p_flip_down = flip_down_probability(n);
  b.depolarization_enhancement = static_cast<double>(n);
  b.gate_error = gate_error(t_pi_us, params.t2_us, n_swaps);
  b.required_t2_us = required_t2(epsilon, t_pi_us, n_swaps);
  b.n_swaps = n_swaps;
  b.enhancement_mode = mode;
  b.dephasing_dominated = params.t1_up_us / static_cast<double>(n) > params.t2_us;
  return b;
}

}  // namespace spinsim
