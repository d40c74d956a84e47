#include "goc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "goc/csv.hpp"
#include "goc/grid.hpp"
#include "goc/parallel.hpp"

namespace goc {

std::unique_ptr<ExperimentSetup> prepare_experiment(const ExperimentConfig& config,
                                                    unsigned threads) {
  auto setup = std::make_unique<ExperimentSetup>();
  const LipschitzOverrides& ov = config.lipschitz;

  LipschitzProfile lip{};
  if (ov.ell && ov.big_l && ov.d) {
    lip = LipschitzProfile{*ov.ell, *ov.big_l, *ov.d};
  } else {
    const std::vector<double> etas = linspace(config.a, config.b, config.lipschitz_resolution);
    const EnvelopeBank bank(config.scenario, etas, config.envelope, threads);
    const std::vector<double> u = realized_u_curve(bank, config.utility);
    setup->lipschitz = lipschitz_from_samples(config.utility, bank.tables(), bank.etas(), u);
    setup->lipschitz_estimated = true;
    lip = setup->lipschitz.profile;
    if (ov.ell) lip.ell = *ov.ell;
    if (ov.big_l) lip.big_l = *ov.big_l;
    if (ov.d) lip.d = *ov.d;
  }
  setup->lipschitz.profile = lip;

  setup->learner = LearnerConfig::derive(config.a, config.b, config.delta, config.lambda, lip,
                                         config.budget_scale);
  setup->arm_bank =
      EnvelopeBank(config.scenario, setup->learner.arm_grid(), config.envelope, threads);
  setup->responses =
      std::make_unique<ResponseCache>(config.scenario, setup->arm_bank, config.utility);
  setup->arm_u = realized_u_curve(setup->arm_bank, config.utility);
  setup->best_arm = static_cast<std::size_t>(
      std::max_element(setup->arm_u.begin(), setup->arm_u.end()) - setup->arm_u.begin());

  setup->reference_etas = linspace(config.a, config.b, 10 * setup->learner.arms());
  const EnvelopeBank reference(config.scenario, setup->reference_etas, config.envelope, threads);
  setup->reference_u = realized_u_curve(reference, config.utility);
  setup->u_star = *std::max_element(setup->reference_u.begin(), setup->reference_u.end());
  return setup;
}

TrialRow run_trial(const ExperimentConfig& config, const ExperimentSetup& setup, Algo algo,
                   std::size_t trial, const RoundTrace& trace) {
  Environment env(*setup.responses, config.env);
  const LearnerContext ctx{&env, &setup.arm_bank, &config.utility, config.base_seed, trial, trace};
  const LearnerOutcome outcome =
      algo == Algo::Etc ? run_etc(setup.learner, ctx) : run_elimination(setup.learner, ctx);
  TrialRow row;
  row.trial = trial;
  row.algo = algo;
  row.eta_hat = outcome.eta_hat;
  row.regret_raw = regret(outcome, setup.u_star, setup.arm_bank, config.utility).raw;
  row.rounds_used = outcome.total_game_rounds;
  row.best_arm_eliminated = outcome.arms[setup.best_arm].eliminated;
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentSetup& setup,
                                unsigned threads) {
  ExperimentResult result;
  const std::size_t per_trial = config.algos.size();
  result.rows.resize(config.trials * per_trial);
  parallel_for(result.rows.size(), threads, [&](std::size_t slot) {
    const std::size_t trial = slot / per_trial;
    const Algo algo = config.algos[slot % per_trial];
    try {
      result.rows[slot] = run_trial(config, setup, algo, trial);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "trial " << trial << " (" << to_string(algo) << "): " << e.what();
      throw std::runtime_error(msg.str());
    }
  });
  result.summary = summarize(result.rows, config.lambda, config.delta);
  return result;
}

SummaryReport summarize(const std::vector<TrialRow>& rows, double lambda, double delta) {
  SummaryReport report;
  report.lambda = lambda;
  report.delta = delta;

  std::vector<Algo> order;
  for (const TrialRow& r : rows) {
    if (std::find(order.begin(), order.end(), r.algo) == order.end()) order.push_back(r.algo);
  }
  for (Algo algo : order) {
    AlgoSummary s;
    s.algo = algo;
    std::vector<double> regrets;
    double rounds = 0.0;
    for (const TrialRow& r : rows) {
      if (r.algo != algo) continue;
      const double clamped = std::max(r.regret_raw, 0.0);
      regrets.push_back(clamped);
      if (clamped > lambda) ++s.failures;
      rounds += static_cast<double>(r.rounds_used);
      if (r.best_arm_eliminated) ++s.best_arm_eliminated;
    }
    s.trials = regrets.size();
    const double count = static_cast<double>(s.trials);
    s.mean_regret = std::accumulate(regrets.begin(), regrets.end(), 0.0) / count;
    std::sort(regrets.begin(), regrets.end());
    const std::size_t mid = regrets.size() / 2;
    s.median_regret =
        regrets.size() % 2 ? regrets[mid] : 0.5 * (regrets[mid - 1] + regrets[mid]);
    s.failure_rate = static_cast<double>(s.failures) / count;
    s.mean_rounds = rounds / count;
    report.algos.push_back(s);
  }

  std::map<std::size_t, std::uint64_t> etc_rounds;
  std::map<std::size_t, std::uint64_t> elim_rounds;
  for (const TrialRow& r : rows) {
    (r.algo == Algo::Etc ? etc_rounds : elim_rounds)[r.trial] = r.rounds_used;
  }
  if (!etc_rounds.empty() && !elim_rounds.empty()) {
    std::size_t matched = 0;
    for (const auto& [trial, elim] : elim_rounds) {
      auto it = etc_rounds.find(trial);
      if (it == etc_rounds.end()) continue;
      ++matched;
      if (elim <= it->second) ++report.elim_not_more_rounds;
      if (elim < it->second) ++report.elim_strictly_fewer;
    }
    report.matched_trials = matched;
  }
  return report;
}

void write_trials_csv(std::ostream& out, const std::string& comment,
                      const std::vector<TrialRow>& rows) {
  CsvWriter csv(out, comment,
                {"trial", "algo", "eta_hat", "regret_raw", "rounds_used", "best_arm_eliminated"});
  for (const TrialRow& r : rows) {
    csv.cell(r.trial)
        .cell(to_string(r.algo))
        .cell(r.eta_hat)
        .cell(r.regret_raw)
        .cell(r.rounds_used)
        .cell(r.best_arm_eliminated);
    csv.end_row();
  }
}

std::vector<TrialRow> read_trials_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::size_t c_trial = table.column("trial");
  const std::size_t c_algo = table.column("algo");
  const std::size_t c_eta = table.column("eta_hat");
  const std::size_t c_regret = table.column("regret_raw");
  const std::size_t c_rounds = table.column("rounds_used");
  const std::size_t c_elim = table.column("best_arm_eliminated");
  std::vector<TrialRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& cells : table.rows) {
    TrialRow r;
    r.trial = static_cast<std::size_t>(std::stoull(cells[c_trial]));
    r.algo = parse_algo(cells[c_algo]);
    r.eta_hat = std::stod(cells[c_eta]);
    r.regret_raw = std::stod(cells[c_regret]);
    r.rounds_used = std::stoull(cells[c_rounds]);
    if (cells[c_elim] != "true" && cells[c_elim] != "false") {
      throw std::runtime_error(path + ": best_arm_eliminated must be true or false");
    }
    r.best_arm_eliminated = cells[c_elim] == "true";
    rows.push_back(r);
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::string& comment,
                       const SummaryReport& report) {
  CsvWriter csv(out, comment,
                {"algo", "trials", "mean_regret", "median_regret", "failures", "failure_rate",
                 "lambda", "delta", "mean_rounds", "best_arm_eliminated", "matched_trials",
                 "elim_not_more_rounds", "elim_strictly_fewer", "verify_max_gap"});
  for (const AlgoSummary& s : report.algos) {
    csv.cell(to_string(s.algo))
        .cell(s.trials)
        .cell(s.mean_regret)
        .cell(s.median_regret)
        .cell(s.failures)
        .cell(s.failure_rate)
        .cell(report.lambda)
        .cell(report.delta)
        .cell(s.mean_rounds)
        .cell(s.best_arm_eliminated);
    if (report.matched_trials) {
      csv.cell(*report.matched_trials)
          .cell(report.elim_not_more_rounds)
          .cell(report.elim_strictly_fewer);
    } else {
      csv.empty().empty().empty();
    }
    if (report.verify_max_gap) {
      csv.cell(*report.verify_max_gap);
    } else {
      csv.empty();
    }
    csv.end_row();
  }
}

std::vector<CurveRow> emit_curves(const ExperimentConfig& config, std::size_t points,
                                  unsigned threads) {
  const EnvelopeBank bank(config.scenario, linspace(config.a, config.b, points), config.envelope,
                          threads);
  std::vector<CurveRow> rows;
  rows.reserve(points);
  for (const EnvelopeTable& t : bank.tables()) {
    const BestResponse br = best_response(t, config.utility);
    rows.push_back(CurveRow{t.eta(), br.alpha_star, br.mmse, q_dc(config.utility, br.mmse, br.alpha_star)});
  }
  return rows;
}

void write_curves_csv(std::ostream& out, const std::string& comment,
                      const std::vector<CurveRow>& rows) {
  CsvWriter csv(out, comment, {"eta", "alpha", "c", "u"});
  for (const CurveRow& r : rows) {
    csv.cell(r.eta).cell(r.alpha).cell(r.mmse).cell(r.u);
    csv.end_row();
  }
}

std::string provenance(const std::string& tool, const std::string& hash, std::uint64_t seed) {
  return "# tool=goc-" + tool + " config_hash=" + hash + " seed=" + std::to_string(seed);
}

}  // namespace goc
