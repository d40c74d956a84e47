// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "goc/adversary.hpp"
#include "goc/config.hpp"
#include "goc/envelope.hpp"
#include "goc/environment.hpp"
#include "goc/experiment.hpp"
#include "goc/grid.hpp"
#include "goc/oracle.hpp"
#include "goc/parallel.hpp"
#include "goc/random.hpp"

namespace fs = std::filesystem;
using namespace goc;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Verdict& v, double seconds) {
  if (!v.pass) ++failures;
  std::printf("%s criterion %d: %s | %s | %.1fs\n", v.pass ? "PASS" : "FAIL", id, title.c_str(),
              v.detail.c_str(), seconds);
  std::fflush(stdout);
}

template <class Fn>
void run(int id, const std::string& title, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = Verdict{false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, v, secs);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

const std::vector<double> matrix_etas{2.0, 2.5, 3.0, 4.0, 6.0};

std::vector<Scenario> model_matrix() {
  return {Scenario::create(1.0, 1e4, NoiseKind::UniformSymmetric),
          Scenario::create(0.1, 1e4, NoiseKind::UniformSymmetric),
          Scenario::create(1.0, 1e4, NoiseKind::TruncatedGaussian, 0.5),
          Scenario::create(0.1, 1e4, NoiseKind::TruncatedGaussian, 0.05)};
}

Verdict envelope_oracle(unsigned threads) {
  const Scenario s = Scenario::create(1.0, 1e4, NoiseKind::UniformSymmetric);
  const EnvelopeBank bank(s, matrix_etas, {}, threads);
  const std::vector<double> alphas = linspace(0.1, 1.0, 10);
  std::vector<OracleResult> results(matrix_etas.size() * alphas.size());
  parallel_for(results.size(), threads, [&](std::size_t i) {
    results[i] = two_point_oracle(s, bank.tables()[i / alphas.size()], alphas[i % alphas.size()]);
  });
  double worst = 0.0;
  std::size_t bad = 0;
  for (const OracleResult& r : results) {
    const double excess = std::abs(r.gap()) / (1e-3 * std::max(1.0, r.envelope_value));
    worst = std::max(worst, excess);
    if (excess > 1.0) ++bad;
  }
  return {bad == 0, std::to_string(results.size()) + " pairs, worst |gap|/tol = " + fmt(worst)};
}

Verdict physical_bridge() {
  const Scenario s = Scenario::create(1.0, 1e4, NoiseKind::UniformSymmetric);
  const double eta = 2.5;
  const std::size_t rounds = 1000000;
  std::ostringstream detail;
  bool ok = true;
  int idx = 0;
  for (double zf : {eta - 1.0, eta, eta + 0.5}) {
    const double z = zf * s.delta;
    const MixtureAdversary adv = MixtureAdversary::point_mass(z);
    RandomStream rng(2024, {static_cast<std::uint64_t>(idx++)});
    std::vector<RoundObservation> obs;
    obs.reserve(rounds);
    std::size_t acc = 0;
    for (std::size_t r = 0; r < rounds; ++r) {
      obs.push_back(step_physical(s, eta, adv, r, rng));
      acc += obs.back().accepted ? 1 : 0;
    }
    const double k = k_eta(s, eta, z);
    const double frac = static_cast<double>(acc) / static_cast<double>(rounds);
    const double sigma = std::sqrt(k * (1.0 - k) / static_cast<double>(rounds));
    const double acc_z = sigma > 0.0 ? std::abs(frac - k) / sigma : (frac == k ? 0.0 : INFINITY);
    const ConditionalMse m = empirical_conditional_mse(obs);
    const double expected = nu_eta(s, eta, z) / (4.0 * k);
    const double mse_z = std::abs(m.mse - expected) / m.standard_error;
    ok = ok && acc_z <= 3.0 && mse_z <= 3.0;
    detail << "z=" << fmt(z) << ": accept " << fmt(frac) << " vs " << fmt(k) << " (" << fmt(acc_z)
           << " sigma), mse " << fmt(m.mse) << " vs " << fmt(expected) << " (" << fmt(mse_z)
           << " se); ";
  }
  return {ok, detail.str()};
}

struct PacRun {
  std::unique_ptr<ExperimentSetup> setup;
  ExperimentResult result;
};

PacRun pac_run(std::size_t trials, std::vector<Algo> algos, unsigned threads) {
  ExperimentConfig c;  // (a, b, delta, lambda) = (2, 6, 0.05, 0.1), Bernoulli, estimated profile
  c.trials = trials;
  c.algos = std::move(algos);
  PacRun run;
  run.setup = prepare_experiment(c, threads);
  run.result = run_experiment(c, *run.setup, threads);
  return run;
}

const AlgoSummary& summary_of(const SummaryReport& r, Algo a) {
  for (const AlgoSummary& s : r.algos) {
    if (s.algo == a) return s;
  }
  throw std::runtime_error("algorithm missing from summary");
}

std::string budget_text(const ExperimentSetup& s) {
  const LearnerConfig& l = s.learner;
  return "ell=" + fmt(l.lip.ell) + " L=" + fmt(l.lip.big_l) + " d=" + fmt(l.lip.d) +
         " n=" + std::to_string(l.n) + " k=" + std::to_string(l.k);
}

Verdict quantization(unsigned threads) {
  struct Instance {
    std::string name;
    ExperimentConfig config;
  };
  std::vector<Instance> matrix;
  auto add = [&](const std::string& name, Scenario s, UtilitySpec u, double a, double b) {
    ExperimentConfig c;
    c.scenario = s;
    c.utility = u;
    c.a = a;
    c.b = b;
    c.lipschitz_resolution = 201;
    matrix.push_back({name, c});
  };
  const Scenario u01 = Scenario::create(0.1, 1e4, NoiseKind::UniformSymmetric);
  const Scenario u1 = Scenario::create(1.0, 1e4, NoiseKind::UniformSymmetric);
  const Scenario g01 = Scenario::create(0.1, 1e4, NoiseKind::TruncatedGaussian, 0.05);
  add("uniform0.1/linear1/product1", u01, {LinearDc{1.0}, ProductAd{1.0}}, 2.0, 6.0);
  add("uniform0.1/ratio/wsum(1,1)", u01, {RatioDc{}, WeightedSumAd{1.0, 1.0}}, 2.0, 6.0);
  add("uniform1/linear0.5/wsum(0.5,1)", u1, {LinearDc{0.5}, WeightedSumAd{0.5, 1.0}}, 2.0, 6.0);
  add("gauss0.05/linear2/product0.5", g01, {LinearDc{2.0}, ProductAd{0.5}}, 2.0, 5.0);
  add("uniform0.1/linear0/product2", u01, {LinearDc{0.0}, ProductAd{2.0}}, 3.0, 6.0);
  // interior optima, where the grid can actually miss the peak
  add("uniform0.1/linear10/product1", u01, {LinearDc{10.0}, ProductAd{1.0}}, 2.0, 6.0);
  add("gauss0.05/linear10/wsum(1,1)", g01, {LinearDc{10.0}, WeightedSumAd{1.0, 1.0}}, 2.0, 6.0);
  add("uniform0.1/linear10/product1 [2.3,4.1]", u01, {LinearDc{10.0}, ProductAd{1.0}}, 2.3, 4.1);

  bool ok = true;
  std::ostringstream detail;
  for (const Instance& inst : matrix) {
    const auto setup = prepare_experiment(inst.config, threads);
    const double ref_max = setup->u_star;
    const double grid_max = *std::max_element(setup->arm_u.begin(), setup->arm_u.end());
    const LearnerConfig& l = setup->learner;
    const double bound = l.lip.big_l * (l.b - l.a) / static_cast<double>(l.n) + 1e-6;
    const double gap = ref_max - grid_max;
    ok = ok && gap <= bound;
    const auto peak = std::max_element(setup->reference_u.begin(), setup->reference_u.end());
    const double eta_star = setup->reference_etas[static_cast<std::size_t>(peak - setup->reference_u.begin())];
    detail << inst.name << " (peak at " << fmt(eta_star) << "): " << fmt(gap) << " <= " << fmt(bound) << "; ";
  }
  return {ok, detail.str()};
}

Verdict endpoints() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (const Scenario& s : model_matrix()) {
    for (double eta : matrix_etas) {
      const double lo = (eta - 1.0) * s.delta;
      const double hi = (eta + 1.0) * s.delta;
      worst = std::max({worst, std::abs(k_eta(s, eta, lo) - 1.0), std::abs(k_eta(s, eta, hi)),
                        std::abs(nu_eta(s, eta, hi)), std::abs(h_eta(s, eta, 0.0))});
      ++cases;
    }
  }
  return {worst <= 1e-9, std::to_string(cases) + " (model, eta) pairs, worst deviation " + fmt(worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "goc_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "cfg.toml";
  {
    std::ofstream f(cfg);
    f << "[scenario]\ndelta = 0.1\nbig_m = 1e4\n[noise]\nkind = \"uniform\"\n"
      << "[utility.dc]\nkind = \"linear\"\ngamma = 1\n[utility.ad]\nkind = \"product\"\ntheta = 1\n"
      << "[lipschitz]\nresolution = 81\n[envelope]\ngrid = 1001\n"
      << "[learner]\nbudget_scale = 0.05\n[experiment]\ntrials = 8\ncurve_points = 41\n";
  }
  struct Command {
    std::string name;
    std::string args;           // subcommand and its flags
    std::vector<std::string> extra;  // extra output files besides --out
  };
  const std::vector<Command> commands{
      {"envelope", "envelope --eta-list 2,2.5,...,4 --grid 501", {}},
      {"solve", "solve", {}},
      {"simulate_physical", "simulate --mode physical --eta 2.5 --rounds 20000 --adv \"z=0.2:0.5,z=0.3:0.5\"", {}},
      {"simulate_bernoulli", "simulate --mode bernoulli --eta 3 --rounds 20000", {}},
      {"learn", "learn --algo both --trace {dir}/trace_{run}.csv --summary {dir}/summary_{run}.csv",
       {"trace", "summary"}},
      {"verify", "verify --eta-list 2,3 --alpha-list 0.2:0.4:1.0 --z-grid 81 --w-grid 41", {}},
      {"curves", "curves", {}},
      {"report", "report --trials {dir}/learn_1.csv --verify {dir}/verify_1.csv", {}},
  };
  auto expand = [&](std::string s, int run) {
    for (auto [key, val] : {std::pair<std::string, std::string>{"{dir}", dir.string()},
                            {"{run}", std::to_string(run)}}) {
      for (std::size_t p; (p = s.find(key)) != std::string::npos;) s.replace(p, key.size(), val);
    }
    return s;
  };
  std::ostringstream detail;
  bool ok = true;
  for (const Command& c : commands) {
    for (int run = 1; run <= 2; ++run) {
      // Thread count differs between the runs; output must not depend on it.
      const std::string cmd = std::string(GOC_CLI_PATH) + " --config " + cfg.string() +
                              " --seed 7 --threads " + std::to_string(run) + " --out " +
                              (dir / (c.name + "_" + std::to_string(run) + ".csv")).string() + " " +
                              expand(c.args, run) + " 2> " + (dir / "stderr.txt").string();
      if (std::system(cmd.c_str()) != 0) {
        return {false, c.name + " failed: " + slurp(dir / "stderr.txt")};
      }
    }
    std::vector<std::string> files{c.name};
    for (const std::string& e : c.extra) files.push_back(e);
    for (const std::string& f : files) {
      const std::string a = slurp(dir / (f + "_1.csv"));
      const std::string b = slurp(dir / (f + "_2.csv"));
      const bool same = !a.empty() && a == b && a.rfind("# tool=goc-", 0) == 0;
      ok = ok && same;
      detail << f << (same ? " identical" : " DIFFERS") << " (" << a.size() << " bytes); ";
    }
  }
  fs::remove_all(dir);
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const unsigned threads = default_threads();
  std::printf("acceptance suite, %u thread(s)\n", threads);

  run(1, "envelope-oracle agreement (uniform, delta=1, M=1e4)", [&] { return envelope_oracle(threads); });
  run(2, "physical-model bridge (point masses, 1e6 rounds)", [] { return physical_bridge(); });

  // Criteria 3 and 4 share the same 200 matched seeds.
  std::unique_ptr<PacRun> pac;
  auto pac_once = [&]() -> PacRun& {
    if (!pac) pac = std::make_unique<PacRun>(pac_run(200, {Algo::Etc, Algo::Elim}, threads));
    return *pac;
  };
  run(3, "explore-then-commit PAC guarantee (200 trials)", [&] {
    PacRun& p = pac_once();
    const AlgoSummary& s = summary_of(p.result.summary, Algo::Etc);
    return Verdict{s.failure_rate < 0.05,
                   "failure rate " + fmt(s.failure_rate) + " < 0.05, mean regret " + fmt(s.mean_regret) +
                       ", U*=" + fmt(p.setup->u_star) + ", " + budget_text(*p.setup)};
  });
  run(4, "elimination PAC guarantee and efficiency (same 200 seeds)", [&] {
    PacRun& p = pac_once();
    const SummaryReport& r = p.result.summary;
    const AlgoSummary& s = summary_of(r, Algo::Elim);
    const std::size_t matched = r.matched_trials.value_or(0);
    const bool ok = s.failure_rate < 0.05 && matched == 200 && r.elim_not_more_rounds == matched &&
                    2 * r.elim_strictly_fewer >= matched;
    return Verdict{ok, "failure rate " + fmt(s.failure_rate) + ", rounds(elim) <= rounds(etc) in " +
                           std::to_string(r.elim_not_more_rounds) + "/" + std::to_string(matched) +
                           ", strictly fewer in " + std::to_string(r.elim_strictly_fewer) +
                           ", mean rounds " + fmt(s.mean_rounds) + " vs " +
                           fmt(summary_of(r, Algo::Etc).mean_rounds)};
  });
  run(5, "safe elimination of the best grid arm (500 trials)", [&] {
    const PacRun p = pac_run(500, {Algo::Elim}, threads);
    const AlgoSummary& s = summary_of(p.result.summary, Algo::Elim);
    const double freq = static_cast<double>(s.best_arm_eliminated) / static_cast<double>(s.trials);
    return Verdict{freq < 0.05, "best arm eliminated in " + std::to_string(s.best_arm_eliminated) +
                                    "/" + std::to_string(s.trials) + " trials"};
  });
  run(6, "quantization bound on the learner grid", [&] { return quantization(threads); });
  run(7, "endpoint identities of k, nu and h", [] { return endpoints(); });
  run(8, "byte-identical CLI outputs on repeated runs", [] { return determinism(); });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
