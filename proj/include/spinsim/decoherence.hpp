#pragma once

#include <cstdint>

#include "spinsim/units.hpp"

namespace spinsim {

/// Per-event probability to leave |W> after a single-spin dephasing (sigma_z)
/// event: (4/n)(1 - 1/n). Multiplied by n spins the aggregate tends to 4,
/// independent of ensemble size.
double dephasing_leak_probability(int n);

/// Probability that a single-spin 1->0 flip takes |W> to |0>: 1/n.
double flip_down_probability(int n);

enum class JumpKind { Dephase, FlipDown };

struct JumpEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

/// State-vector validation oracle for the closed forms above: builds |W> in
/// the m <= 1 basis, applies the jump on a uniformly random spin and measures
/// the leakage (dephase) or the |0> transfer weight (flip down). Requires
/// samples >= 1e4.
JumpEstimate monte_carlo_jump_oracle(int n, JumpKind kind, int samples, std::uint64_t seed);

/// Gate error under spin-echo decoupling: 1 - exp[-(n_swaps t_pi / t2_eff)^3].
double gate_error(double t_pi_us, double t2_eff_us, int n_swaps = 4);

/// Inverse of gate_error in t2: n_swaps t_pi / (-ln(1-eps))^(1/3).
double required_t2(double epsilon, double t_pi_us, int n_swaps = 4);

/// sqrt(N) for qubit-ensemble gates, N for ensemble-ensemble gates.
enum class EnhancementMode { SqrtN, N };

/// t_pi = 1/(4 V) with V = (sqrt(n_c) or n_c) * j_dd * angular / R^3.
double collective_swap_time(double n_c, double distance_nm, const PhysicalParams& params,
                            EnhancementMode mode, double angular = 1.0);

struct ErrorBudget {
  int n = 0;
  double p_dephase_leak = 0.0;            // per T2 event
  double p_flip_down = 0.0;               // per T1(1->0) event
  double depolarization_enhancement = 0;  // factor n on T1(0->1) events
  double gate_error = 0.0;
  double required_t2_us = 0.0;            // for the requested epsilon
  int n_swaps = 0;
  EnhancementMode enhancement_mode = EnhancementMode::SqrtN;
  bool dephasing_dominated = false;       // t1_up / n still longer than t2
};

ErrorBudget make_error_budget(int n, double t_pi_us, const PhysicalParams& params,
                              double epsilon, int n_swaps, EnhancementMode mode);

}  // namespace spinsim
