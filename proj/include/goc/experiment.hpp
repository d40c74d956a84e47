#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "goc/adversary.hpp"
#include "goc/config.hpp"
#include "goc/environment.hpp"
#include "goc/learners.hpp"

namespace goc {

// Everything shared by the trials of one experiment: the learner budget, the
// tables for the arm grid, the adversary's replies, and the fine reference
// grid used to score outcomes. Read-only once built.
struct ExperimentSetup {
  LearnerConfig learner;
  LipschitzEstimate lipschitz;
  bool lipschitz_estimated = false;
  EnvelopeBank arm_bank;
  std::unique_ptr<ResponseCache> responses;
  std::vector<double> arm_u;     // true U at every arm
  std::size_t best_arm = 0;      // argmax of arm_u, lowest index on ties
  std::vector<double> reference_etas;
  std::vector<double> reference_u;
  double u_star = 0.0;           // max of reference_u
};

/// Estimates (ell, L, d) unless fully overridden, derives (n, k), and builds
/// the arm and reference (10 (n + 1) points) grids.
std::unique_ptr<ExperimentSetup> prepare_experiment(const ExperimentConfig& config,
                                                    unsigned threads);

struct TrialRow {
  std::size_t trial = 0;
  Algo algo = Algo::Etc;
  double eta_hat = 0.0;
  double regret_raw = 0.0;
  std::uint64_t rounds_used = 0;
  bool best_arm_eliminated = false;
};

struct AlgoSummary {
  Algo algo = Algo::Etc;
  std::size_t trials = 0;
  double mean_regret = 0.0;  // of clamped regret
  double median_regret = 0.0;
  std::size_t failures = 0;  // clamped regret > lambda
  double failure_rate = 0.0;
  double mean_rounds = 0.0;
  std::size_t best_arm_eliminated = 0;
};

struct SummaryReport {
  double lambda = 0.0;
  double delta = 0.0;
  std::vector<AlgoSummary> algos;
  // Trials where elimination used no more rounds than ETC with the same seed,
  // and strictly fewer; only set when both algorithms ran.
  std::optional<std::size_t> matched_trials;
  std::size_t elim_not_more_rounds = 0;
  std::size_t elim_strictly_fewer = 0;
  std::optional<double> verify_max_gap;
};

/// Reduces trial rows; failure means max(regret_raw, 0) > lambda.
SummaryReport summarize(const std::vector<TrialRow>& rows, double lambda, double delta);

struct ExperimentResult {
  std::vector<TrialRow> rows;  // ordered by (trial, algo)
  SummaryReport summary;
};

/// Runs config.trials seeded trials per algorithm; trial t of every algorithm
/// uses the same per-arm random streams. Deterministic given the config.
ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentSetup& setup,
                                unsigned threads);

/// One trial of one algorithm; `trace` receives every arm update if set.
TrialRow run_trial(const ExperimentConfig& config, const ExperimentSetup& setup, Algo algo,
                   std::size_t trial, const RoundTrace& trace = {});

void write_trials_csv(std::ostream& out, const std::string& comment,
                      const std::vector<TrialRow>& rows);
std::vector<TrialRow> read_trials_csv(const std::string& path);
void write_summary_csv(std::ostream& out, const std::string& comment,
                       const SummaryReport& report);

struct CurveRow {
  double eta;
  double alpha;
  double mmse;
  double u;
};

/// (eta, alpha(eta), c(alpha(eta)), U(eta)) at `points` evenly spaced eta in [a, b].
std::vector<CurveRow> emit_curves(const ExperimentConfig& config, std::size_t points,
                                  unsigned threads);
void write_curves_csv(std::ostream& out, const std::string& comment,
                      const std::vector<CurveRow>& rows);

/// Comment line recorded at the top of every CSV.
std::string provenance(const std::string& tool, const std::string& hash, std::uint64_t seed);

}  // namespace goc
