// goc: command-line front end for the coding-game laboratory.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goc/adversary.hpp"
#include "goc/config.hpp"
#include "goc/csv.hpp"
#include "goc/envelope.hpp"
#include "goc/environment.hpp"
#include "goc/experiment.hpp"
#include "goc/grid.hpp"
#include "goc/lists.hpp"
#include "goc/oracle.hpp"
#include "goc/parallel.hpp"
#include "goc/random.hpp"

namespace {

using namespace goc;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::optional<unsigned> threads;
};

struct Session {
  ExperimentConfig config;
  std::string hash;
  unsigned threads = 1;
};

Session open_session(const Globals& g) {
  Session s;
  if (!g.config_path.empty()) s.config = load_config(g.config_path);
  if (g.seed) s.config.base_seed = *g.seed;
  s.hash = config_hash(s.config);
  s.threads = g.threads ? std::max(1u, *g.threads) : default_threads();
  return s;
}

// Writes to --out, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") file_ = std::make_unique<std::ofstream>(open_output(path));
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("failed writing output file");
    } else {
      std::cout.flush();
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> eta_list_or_grid(const std::string& list, const ExperimentConfig& c,
                                     std::size_t points) {
  if (!list.empty()) return parse_real_list(list);
  return linspace(c.a, c.b, points);
}

void cmd_envelope(const Globals& g, const std::string& eta_list, std::optional<std::size_t> grid,
                  std::optional<double> alpha_min) {
  Session s = open_session(g);
  if (grid) s.config.envelope.grid_size = *grid;
  if (alpha_min) s.config.envelope.alpha_min = *alpha_min;
  const std::vector<double> etas = eta_list_or_grid(eta_list, s.config, 9);
  const EnvelopeBank bank(s.config.scenario, etas, s.config.envelope, s.threads);

  Output out(g.out);
  CsvWriter csv(out.stream(), provenance("envelope", s.hash, s.config.base_seed),
                {"eta", "alpha", "h", "h_star", "c"});
  for (const EnvelopeTable& t : bank.tables()) {
    const auto alpha = t.alpha_grid();
    const auto h = t.h_values();
    const auto hs = t.h_star_values();
    const auto c = t.c_values();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      csv.cell(t.eta()).cell(alpha[i]).cell(h[i]).cell(hs[i]).cell(c[i]);
      csv.end_row();
    }
  }
  out.close();
}

void cmd_solve(const Globals& g, const std::string& eta_list) {
  const Session s = open_session(g);
  const std::vector<double> etas = eta_list_or_grid(eta_list, s.config, s.config.curve_points);
  const EnvelopeBank bank(s.config.scenario, etas, s.config.envelope, s.threads);
  const CompleteInfoSolution sol = solve_complete_info(bank, s.config.utility);

  Output out(g.out);
  CsvWriter csv(out.stream(), provenance("solve", s.hash, s.config.base_seed),
                {"eta", "alpha_star", "mmse", "u_dc", "u_ad"});
  for (const BestResponse& r : sol.responses) {
    csv.cell(r.eta).cell(r.alpha_star).cell(r.mmse).cell(r.dc_value).cell(r.ad_value);
    csv.end_row();
  }
  out.close();
  std::cerr << "eta_hat=" << format_real(sol.eta_hat) << " U=" << format_real(sol.dc_value)
            << "\n";
}

void cmd_simulate(const Globals& g, const std::string& mode, double eta, std::uint64_t rounds,
                  const std::string& adv, std::optional<double> alpha) {
  const Session s = open_session(g);
  const ExperimentConfig& c = s.config;
  const bool physical = mode == "physical";

  std::optional<EnvelopeTable> table;
  if (adv.empty() || (!physical && !alpha)) {
    table = build_envelope_table(c.scenario, eta, c.envelope);
  }
  const double alpha_b = alpha ? *alpha : best_response(*table, c.utility).alpha_star;
  if (!(alpha_b >= 0.0 && alpha_b <= 1.0)) throw std::invalid_argument("--alpha must lie in [0, 1]");
  const MixtureAdversary adversary =
      adv.empty() ? MixtureAdversary::realizing(*table, best_response(*table, c.utility).alpha_star)
                  : parse_mixture(adv);

  RandomStream rng(c.base_seed, {0x73696d75ULL});
  std::vector<RoundObservation> observed;
  observed.reserve(static_cast<std::size_t>(rounds));

  Output out(g.out);
  CsvWriter csv(out.stream(), provenance("simulate", s.hash, c.base_seed),
                {"round", "eta", "accepted", "estimate", "u_true"});
  std::uint64_t accepted = 0;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    const RoundObservation o = physical ? step_physical(c.scenario, eta, adversary, r, rng)
                                        : step_bernoulli(alpha_b, eta, r, rng);
    accepted += o.accepted ? 1 : 0;
    csv.cell(o.round).cell(o.eta_committed).cell(o.accepted);
    if (o.estimate) csv.cell(*o.estimate); else csv.empty();
    if (o.u_true) csv.cell(*o.u_true); else csv.empty();
    csv.end_row();
    if (physical) observed.push_back(o);
  }
  out.close();

  std::cerr << "accept_rate=" << format_real(rounds ? double(accepted) / double(rounds) : 0.0);
  if (physical) {
    std::cerr << " expected=" << format_real(adversary.expected_acceptance(c.scenario, eta));
    if (accepted > 0) {
      const ConditionalMse m = empirical_conditional_mse(observed);
      std::cerr << " cond_mse=" << format_real(m.mse) << " se=" << format_real(m.standard_error)
                << " expected_mse=" << format_real(adversary.expected_mse(c.scenario, eta));
    }
  }
  std::cerr << "\n";
}

void cmd_learn(const Globals& g, const std::string& algo, std::optional<std::size_t> trials,
               std::optional<double> budget_scale, const std::string& trace_path,
               const std::string& summary_path) {
  Session s = open_session(g);
  ExperimentConfig& c = s.config;
  if (algo == "etc") c.algos = {Algo::Etc};
  else if (algo == "elim") c.algos = {Algo::Elim};
  else if (algo == "both") c.algos = {Algo::Etc, Algo::Elim};
  else if (!algo.empty()) throw std::invalid_argument("--algo must be etc, elim or both");
  if (trials) {
    if (*trials < 1) throw std::invalid_argument("--trials must be >= 1");
    c.trials = *trials;
  }
  if (budget_scale) {
    if (!(*budget_scale > 0.0 && *budget_scale <= 1.0)) {
      throw std::invalid_argument("--budget-scale must lie in (0, 1]");
    }
    c.budget_scale = *budget_scale;
  }
  s.hash = config_hash(c);

  const auto setup = prepare_experiment(c, s.threads);
  std::cerr << "ell=" << format_real(setup->learner.lip.ell)
            << " L=" << format_real(setup->learner.lip.big_l)
            << " d=" << format_real(setup->learner.lip.d) << " n=" << setup->learner.n
            << " k=" << setup->learner.k << " U*=" << format_real(setup->u_star) << "\n";

  const ExperimentResult result = run_experiment(c, *setup, s.threads);
  const std::string comment = provenance("learn", s.hash, c.base_seed);
  Output out(g.out);
  write_trials_csv(out.stream(), comment, result.rows);
  out.close();

  if (!summary_path.empty()) {
    Output sum(summary_path);
    write_summary_csv(sum.stream(), comment, result.summary);
    sum.close();
  }
  for (const AlgoSummary& a : result.summary.algos) {
    std::cerr << to_string(a.algo) << ": failure_rate=" << format_real(a.failure_rate)
              << " mean_regret=" << format_real(a.mean_regret)
              << " mean_rounds=" << format_real(a.mean_rounds) << "\n";
  }

  if (!trace_path.empty()) {
    // Per-round trace of trial 0 for every selected algorithm.
    Output tr(trace_path);
    CsvWriter csv(tr.stream(), comment,
                  {"algo", "round", "arm", "eta", "accepted", "alpha_hat", "u_hat", "eliminated"});
    for (Algo a : c.algos) {
      run_trial(c, *setup, a, 0, [&](std::size_t round, const ArmState& arm, bool acc) {
        csv.cell(to_string(a)).cell(round).cell(arm.index).cell(arm.eta).cell(acc)
            .cell(arm.alpha_hat).cell(arm.u_hat).cell(arm.eliminated);
        csv.end_row();
      });
    }
    tr.close();
  }
}

void cmd_verify(const Globals& g, const std::string& eta_list, const std::string& alpha_list,
                std::size_t z_grid, std::size_t w_grid) {
  const Session s = open_session(g);
  const std::vector<double> etas = parse_real_list(eta_list);
  const std::vector<double> alphas = parse_real_list(alpha_list);
  const EnvelopeBank bank(s.config.scenario, etas, s.config.envelope, s.threads);
  const OracleGrid grid{z_grid, w_grid};

  std::vector<OracleResult> results(bank.etas().size() * alphas.size());
  parallel_for(results.size(), s.threads, [&](std::size_t i) {
    const EnvelopeTable& t = bank.tables()[i / alphas.size()];
    results[i] = two_point_oracle(s.config.scenario, t, alphas[i % alphas.size()], grid);
  });

  Output out(g.out);
  CsvWriter csv(out.stream(), provenance("verify", s.hash, s.config.base_seed),
                {"eta", "alpha", "oracle", "envelope", "gap", "z1", "z2", "w"});
  for (const OracleResult& r : results) {
    csv.cell(r.eta).cell(r.alpha).cell(r.oracle_value).cell(r.envelope_value).cell(r.gap())
        .cell(r.witness.z1).cell(r.witness.z2).cell(r.witness.w);
    csv.end_row();
  }
  out.close();
}

void cmd_curves(const Globals& g, std::optional<std::size_t> points) {
  const Session s = open_session(g);
  const std::size_t p = points ? *points : s.config.curve_points;
  if (p < 2) throw std::invalid_argument("--points must be >= 2");
  const std::vector<CurveRow> rows = emit_curves(s.config, p, s.threads);
  Output out(g.out);
  write_curves_csv(out.stream(), provenance("curves", s.hash, s.config.base_seed), rows);
  out.close();
}

void cmd_report(const Globals& g, const std::string& trials_path, const std::string& verify_path) {
  const Session s = open_session(g);
  const std::vector<TrialRow> rows = read_trials_csv(trials_path);
  if (rows.empty()) throw std::runtime_error(trials_path + ": no trial rows");
  SummaryReport report = summarize(rows, s.config.lambda, s.config.delta);
  if (!verify_path.empty()) {
    const CsvTable v = read_csv(verify_path);
    const std::size_t col = v.column("gap");
    double worst = 0.0;
    for (const auto& r : v.rows) worst = std::max(worst, std::abs(std::stod(r[col])));
    report.verify_max_gap = worst;
  }
  Output out(g.out);
  write_summary_csv(out.stream(), provenance("report", s.hash, s.config.base_seed), report);
  out.close();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goc: coding game with an unknown adversary"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  app.add_option("--config", g.config_path, "experiment config file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "base seed (overrides experiment.seed)");
  app.add_option("--out", g.out, "output CSV path, - for stdout");
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads (default GOC_THREADS or all cores)");

  std::string eta_list;
  std::optional<std::size_t> env_grid;
  std::optional<double> env_alpha_min;
  auto* envelope = app.add_subcommand("envelope", "tabulate h, h* and c per eta");
  envelope->add_option("--eta-list", eta_list, "etas, e.g. 2,2.5,...,6 or 2:0.5:6");
  envelope->add_option("--grid", env_grid, "q grid size");
  envelope->add_option("--alpha-min", env_alpha_min, "smallest tabulated alpha");

  auto* solve = app.add_subcommand("solve", "complete-information best responses");
  solve->add_option("--eta-list", eta_list, "etas (default: curve grid over [a, b])");

  std::string mode = "physical";
  double sim_eta = 0.0;
  std::uint64_t rounds = 1000;
  std::string adv;
  std::optional<double> sim_alpha;
  auto* simulate = app.add_subcommand("simulate", "play rounds against a fixed adversary");
  simulate->add_option("--mode", mode, "bernoulli or physical")
      ->check(CLI::IsMember({"bernoulli", "physical"}));
  simulate->add_option("--eta", sim_eta, "committed threshold")->required();
  simulate->add_option("--rounds", rounds, "rounds to play");
  simulate->add_option("--adv", adv, "mixture z=offset:weight,... (default: best response)");
  simulate->add_option("--alpha", sim_alpha, "acceptance probability in bernoulli mode");

  std::string algo;
  std::optional<std::size_t> trials;
  std::optional<double> budget_scale;
  std::string trace_path;
  std::string summary_path;
  auto* learn = app.add_subcommand("learn", "seeded PAC trials of the learners");
  learn->add_option("--algo", algo, "etc, elim or both (default: experiment.algos)");
  learn->add_option("--trials", trials, "number of trials");
  learn->add_option("--budget-scale", budget_scale, "scale k by this factor (smoke tests only)");
  learn->add_option("--trace", trace_path, "write a per-round trace of trial 0 here");
  learn->add_option("--summary", summary_path, "write the summary CSV here");

  std::string alpha_list = "0.1:0.1:1.0";
  std::size_t z_grid = 401;
  std::size_t w_grid = 201;
  auto* verify = app.add_subcommand("verify", "two-point oracle against the envelope");
  verify->add_option("--eta-list", eta_list, "etas")->required();
  verify->add_option("--alpha-list", alpha_list, "alphas");
  verify->add_option("--z-grid", z_grid, "offset grid points");
  verify->add_option("--w-grid", w_grid, "weight grid points");

  std::optional<std::size_t> points;
  auto* curves = app.add_subcommand("curves", "alpha, c and U along eta");
  curves->add_option("--points", points, "eta grid points (default experiment.curve_points)");

  std::string report_trials;
  std::string report_verify;
  auto* report = app.add_subcommand("report", "summarize a trials CSV");
  report->add_option("--trials", report_trials, "trials CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--verify", report_verify, "verify CSV")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count()) g.seed = seed;
  if (threads_opt->count()) g.threads = threads;

  try {
    if (envelope->parsed()) cmd_envelope(g, eta_list, env_grid, env_alpha_min);
    else if (solve->parsed()) cmd_solve(g, eta_list);
    else if (simulate->parsed()) cmd_simulate(g, mode, sim_eta, rounds, adv, sim_alpha);
    else if (learn->parsed()) cmd_learn(g, algo, trials, budget_scale, trace_path, summary_path);
    else if (verify->parsed()) cmd_verify(g, eta_list, alpha_list, z_grid, w_grid);
    else if (curves->parsed()) cmd_curves(g, points);
    else if (report->parsed()) cmd_report(g, report_trials, report_verify);
  } catch (const ConfigError& e) {
    std::cerr << "goc: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "goc: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
