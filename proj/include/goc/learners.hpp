#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "goc/environment.hpp"
#include "goc/lipschitz.hpp"
#include "goc/utility.hpp"

namespace goc {

struct Budget {
  std::size_t n;  // grid intervals; n + 1 arms
  std::size_t k;  // rounds per arm
};

/// Smallest integers with n > (b - a) max{2L/lambda, 1/d} and
/// k > (8 ell^2 / lambda^2) ln(2(n + 1) / delta).
Budget derive_budget(double a, double b, double delta, double lambda,
                     const LipschitzProfile& lip);

struct LearnerConfig {
  double a = 2.0;
  double b = 6.0;
  double delta = 0.05;
  double lambda = 0.1;
  LipschitzProfile lip{1.0, 1.0, 1.0};
  std::size_t n = 0;
  std::size_t k = 0;

  /// Budget from derive_budget; budget_scale < 1 shrinks k for smoke runs only.
  static LearnerConfig derive(double a, double b, double delta, double lambda,
                              const LipschitzProfile& lip, double budget_scale = 1.0);

  /// eta_i = a + (b - a) (i / n) for i = 0..n; first and last are exactly a and b.
  std::vector<double> arm_grid() const;
  std::size_t arms() const { return n + 1; }
};

/// 2 ell sqrt(ln(4 arms / delta) / (2 r)).
double confidence_radius(double ell, std::size_t arms, double delta, std::size_t r);

struct ArmState {
  std::size_t index = 0;
  double eta = 0.0;
  std::size_t rounds_played = 0;
  std::size_t games_played = 0;  // rounds * game instances per round
  std::size_t accept_count = 0;
  double alpha_hat = 0.0;
  double u_hat = 0.0;
  bool eliminated = false;
  std::optional<std::size_t> eliminated_at_round;
};

struct EliminationEvent {
  std::size_t round;
  std::size_t arm;
  std::size_t leader;
  double gap;     // u_hat(leader) - u_hat(arm)
  double radius;  // epsilon_r
};

struct LearnerOutcome {
  double eta_hat = 0.0;
  std::size_t chosen_arm = 0;
  std::uint64_t total_game_rounds = 0;
  std::vector<ArmState> arms;
  std::vector<EliminationEvent> eliminations;
  std::size_t alpha_clamps = 0;  // estimates pulled up to alpha_min before lookup
};

// Per-round snapshot for trace output: called after every arm update.
using RoundTrace = std::function<void(std::size_t round, const ArmState& arm, bool accepted)>;

// Everything a learner needs besides the configuration: the environment to
// play against, the per-arm random streams, and the envelope tables that turn
// an acceptance estimate into a utility estimate.
struct LearnerContext {
  Environment* env;
  const EnvelopeBank* bank;
  const UtilitySpec* spec;
  std::uint64_t base_seed;
  std::uint64_t trial;
  RoundTrace trace;  // optional
};

/// Utility estimate for one arm: Q_DC(c(alpha_hat), alpha_hat) with alpha_hat
/// clamped into [alpha_min, 1]. Sets `clamped` when the clamp fired.
double estimated_utility(const EnvelopeTable& table, const UtilitySpec& spec, double alpha_hat,
                         bool* clamped = nullptr);

/// Explore-then-commit: every arm plays k rounds (round-robin), then the arm
/// with the highest utility estimate wins (lowest index on ties).
LearnerOutcome run_etc(const LearnerConfig& config, const LearnerContext& ctx);

/// Successive elimination: after each round every surviving arm whose estimate
/// trails the leader by more than epsilon_r is dropped.
LearnerOutcome run_elimination(const LearnerConfig& config, const LearnerContext& ctx);

struct Regret {
  double raw;      // u_star - U(eta_hat); may be negative against a finite reference
  double clamped;  // max(raw, 0)
};

Regret regret(const LearnerOutcome& outcome, double reference_u_star, const EnvelopeBank& bank,
              const UtilitySpec& spec);

}  // namespace goc
