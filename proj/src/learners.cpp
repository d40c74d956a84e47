#include "goc/learners.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "goc/adversary.hpp"
#include "goc/grid.hpp"

namespace goc {
namespace {

void require_interval(double a, double b) {
  if (!(a >= 2.0) || !std::isfinite(a)) throw std::invalid_argument("learner.a: must be >= 2");
  if (!(b > a) || !std::isfinite(b)) {
    throw std::invalid_argument("learner.b: must exceed learner.a (a degenerate interval has no grid)");
  }
}

std::size_t strictly_above(double bound) {
  if (!std::isfinite(bound) || bound > 1e15) {
    throw std::overflow_error("learner budget bound is too large to represent");
  }
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

std::vector<RandomStream> arm_streams(const LearnerContext& ctx, std::size_t arms) {
  std::vector<RandomStream> streams;
  streams.reserve(arms);
  for (std::size_t i = 0; i < arms; ++i) streams.push_back(RandomStream(ctx.base_seed, {std::uint64_t{ctx.trial}, std::uint64_t{i}}));
  return streams;
}

std::vector<ArmState> fresh_arms(const LearnerConfig& config) {
  const std::vector<double> grid = config.arm_grid();
  std::vector<ArmState> arms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    arms[i].index = i;
    arms[i].eta = grid[i];
  }
  return arms;
}

void refresh_estimate(ArmState& arm, const EnvelopeTable& table, const UtilitySpec& spec,
                      std::size_t& clamps) {
  arm.alpha_hat = static_cast<double>(arm.accept_count) / static_cast<double>(arm.games_played);
  bool clamped = false;
  arm.u_hat = estimated_utility(table, spec, arm.alpha_hat, &clamped);
  if (clamped) ++clamps;
}

void validate(const LearnerConfig& config, const LearnerContext& ctx) {
  require_interval(config.a, config.b);
  if (config.n < 1 || config.k < 1) throw std::invalid_argument("learner: n and k must be >= 1");
  if (ctx.env == nullptr || ctx.bank == nullptr || ctx.spec == nullptr) {
    throw std::invalid_argument("learner: incomplete context");
  }
}

}  // namespace

Budget derive_budget(double a, double b, double delta, double lambda,
                     const LipschitzProfile& lip) {
  require_interval(a, b);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("learner.lambda: must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("learner.delta: must lie in (0, 1)");
  lip.validate();
  const std::size_t n = strictly_above((b - a) * std::max(2.0 * lip.big_l / lambda, 1.0 / lip.d));
  const double arms = static_cast<double>(n + 1);
  const std::size_t k = strictly_above(8.0 * lip.ell * lip.ell / (lambda * lambda) *
                                       std::log(2.0 * arms / delta));
  return Budget{n, k};
}

LearnerConfig LearnerConfig::derive(double a, double b, double delta, double lambda,
                                    const LipschitzProfile& lip, double budget_scale) {
  if (!(budget_scale > 0.0 && budget_scale <= 1.0)) {
    throw std::invalid_argument("learner.budget_scale: must lie in (0, 1]");
  }
  const Budget budget = derive_budget(a, b, delta, lambda, lip);
  LearnerConfig c;
  c.a = a;
  c.b = b;
  c.delta = delta;
  c.lambda = lambda;
  c.lip = lip;
  c.n = budget.n;
  c.k = budget.k;
  if (budget_scale < 1.0) {
    c.k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(budget.k) * budget_scale)));
  }
  return c;
}

std::vector<double> LearnerConfig::arm_grid() const {
  return linspace(a, b, n + 1);
}

double confidence_radius(double ell, std::size_t arms, double delta, std::size_t r) {
  if (r == 0) throw std::invalid_argument("confidence_radius: r must be >= 1");
  return 2.0 * ell *
         std::sqrt(std::log(4.0 * static_cast<double>(arms) / delta) / (2.0 * static_cast<double>(r)));
}

double estimated_utility(const EnvelopeTable& table, const UtilitySpec& spec, double alpha_hat,
                         bool* clamped) {
  const double alpha = std::clamp(alpha_hat, table.alpha_min(), 1.0);
  if (clamped != nullptr) *clamped = alpha != alpha_hat;
  return q_dc(spec, table.c_at(alpha), alpha);
}

LearnerOutcome run_etc(const LearnerConfig& config, const LearnerContext& ctx) {
  validate(config, ctx);
  LearnerOutcome out;
  out.arms = fresh_arms(config);
  std::vector<RandomStream> streams = arm_streams(ctx, out.arms.size());
  std::vector<const EnvelopeTable*> tables;
  for (const ArmState& arm : out.arms) tables.push_back(&ctx.bank->at(arm.eta));
  const std::size_t games = ctx.env->games_per_round();

  for (std::size_t r = 1; r <= config.k; ++r) {
    for (ArmState& arm : out.arms) {
      const std::size_t accepted = ctx.env->play(arm.eta, streams[arm.index]);
      arm.accept_count += accepted;
      arm.rounds_played = r;
      arm.games_played += games;
      if (ctx.trace) {
        std::size_t ignored = 0;
        refresh_estimate(arm, *tables[arm.index], *ctx.spec, ignored);
        ctx.trace(r, arm, accepted > 0);
      }
    }
  }

  for (ArmState& arm : out.arms) refresh_estimate(arm, *tables[arm.index], *ctx.spec, out.alpha_clamps);
  std::size_t m = 0;
  for (std::size_t i = 1; i < out.arms.size(); ++i) {
    if (out.arms[i].u_hat > out.arms[m].u_hat) m = i;
  }
  out.chosen_arm = m;
  out.eta_hat = out.arms[m].eta;
  out.total_game_rounds = static_cast<std::uint64_t>(out.arms.size()) * config.k;
  return out;
}

LearnerOutcome run_elimination(const LearnerConfig& config, const LearnerContext& ctx) {
  validate(config, ctx);
  LearnerOutcome out;
  out.arms = fresh_arms(config);
  std::vector<RandomStream> streams = arm_streams(ctx, out.arms.size());
  std::vector<const EnvelopeTable*> tables;
  for (const ArmState& arm : out.arms) tables.push_back(&ctx.bank->at(arm.eta));
  const std::size_t games = ctx.env->games_per_round();

  std::vector<std::size_t> alive(out.arms.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  for (std::size_t r = 1; r <= config.k; ++r) {
    for (std::size_t i : alive) {
      ArmState& arm = out.arms[i];
      const std::size_t accepted = ctx.env->play(arm.eta, streams[i]);
      arm.accept_count += accepted;
      arm.rounds_played = r;
      arm.games_played += games;
      refresh_estimate(arm, *tables[i], *ctx.spec, out.alpha_clamps);
      if (ctx.trace) ctx.trace(r, arm, accepted > 0);
    }
    out.total_game_rounds += alive.size();

    std::size_t leader = alive.front();
    for (std::size_t i : alive) {
      if (out.arms[i].u_hat > out.arms[leader].u_hat) leader = i;
    }
    const double radius = confidence_radius(config.lip.ell, out.arms.size(), config.delta, r);
    std::vector<std::size_t> survivors;
    survivors.reserve(alive.size());
    for (std::size_t i : alive) {
      const double gap = out.arms[leader].u_hat - out.arms[i].u_hat;
      if (gap > radius) {
        out.arms[i].eliminated = true;
        out.arms[i].eliminated_at_round = r;
        out.eliminations.push_back(EliminationEvent{r, i, leader, gap, radius});
      } else {
        survivors.push_back(i);
      }
    }
    alive.swap(survivors);
  }

  std::size_t m = alive.front();
  for (std::size_t i : alive) {
    if (out.arms[i].u_hat > out.arms[m].u_hat) m = i;
  }
  out.chosen_arm = m;
  out.eta_hat = out.arms[m].eta;
  return out;
}

Regret regret(const LearnerOutcome& outcome, double reference_u_star, const EnvelopeBank& bank,
              const UtilitySpec& spec) {
  const double raw = reference_u_star - realized_u(bank.at(outcome.eta_hat), spec);
  return Regret{raw, std::max(raw, 0.0)};
}

}  // namespace goc
