#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "goc/adversary.hpp"
#include "goc/envelope.hpp"
#include "goc/grid.hpp"
#include "goc/lipschitz.hpp"
#include "support.hpp"

using namespace goc;

namespace {

// Exhaustive scan of the adversary objective over the table's alpha grid.
std::size_t scan_argmax(const EnvelopeTable& t, const UtilitySpec& spec) {
  const auto a = t.alpha_grid();
  const auto c = t.c_values();
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (q_ad(spec, c[i], a[i]) > q_ad(spec, c[best], a[best])) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("acceptance-dominated adversary accepts always") {
  const UtilitySpec spec{LinearDc{1.0}, WeightedSumAd{1e-9, 1.0}};
  for (double eta : {2.0, 3.0, 6.0}) {
    const BestResponse br = best_response(build_envelope_table(test::unit_uniform(), eta), spec);
    CHECK(br.alpha_star == 1.0);
  }
}

TEST_CASE("product adversary maximizes the envelope itself") {
  // alpha * c(alpha) = h*(alpha) / 4, so the best response sits at the peak of h*.
  const UtilitySpec spec{LinearDc{1.0}, ProductAd{1.0}};
  for (double eta : {2.0, 3.0, 5.0}) {
    const EnvelopeTable t = build_envelope_table(test::unit_uniform(), eta);
    const BestResponse br = best_response(t, spec);
    const auto hs = t.h_star_values();
    const double peak = *std::max_element(hs.begin(), hs.end());
    CHECK(t.h_star_at(br.alpha_star) >= peak - 1e-9 * peak);
    CHECK(br.ad_value == doctest::Approx(peak / 4.0).epsilon(1e-9));
  }
  // For uniform noise h is not monotone: h(1/2) = 19/6 > h(1) = 4/3, so the peak is interior.
  const BestResponse br2 = best_response(build_envelope_table(test::unit_uniform(), 2.0), spec);
  CHECK(br2.alpha_star < 1.0);
  CHECK(test::uniform_h(2.0, 1.0, br2.alpha_star) > test::uniform_h(2.0, 1.0, 1.0));
}

TEST_CASE("best response agrees with a 10x finer scan") {
  const UtilitySpec spec{LinearDc{1.0}, WeightedSumAd{1.0, 1.0}};
  EnvelopeOptions fine;
  fine.grid_size = 20001;
  const EnvelopeTable coarse_t = build_envelope_table(test::unit_uniform(), 2.0);
  const EnvelopeTable fine_t = build_envelope_table(test::unit_uniform(), 2.0, fine);
  const BestResponse br = best_response(coarse_t, spec);
  const double fine_alpha = fine_t.alpha_grid()[scan_argmax(fine_t, spec)];
  CHECK(std::abs(br.alpha_star - fine_alpha) <= 1.0 / 2000.0 + 1e-12);
  CHECK(br.alpha_index == scan_argmax(coarse_t, spec));
}

TEST_CASE("best response is deterministic and consistent with its parts") {
  const Scenario s = Scenario::create(0.1, 1e4, NoiseKind::UniformSymmetric);
  for (const UtilitySpec& spec : {UtilitySpec{LinearDc{1.0}, ProductAd{1.0}},
                                  UtilitySpec{RatioDc{}, WeightedSumAd{2.0, 0.5}},
                                  UtilitySpec{LinearDc{3.0}, ProductAd{0.4}}}) {
    for (double eta : {2.0, 4.2}) {
      const EnvelopeTable t = build_envelope_table(s, eta);
      const BestResponse a = best_response(t, spec);
      const BestResponse b = best_response(t, spec);
      CHECK(a.alpha_star == b.alpha_star);
      CHECK(a.mmse == b.mmse);
      CHECK(a.dc_value == b.dc_value);
      CHECK(a.alpha_index == b.alpha_index);
      CHECK(a.tie_count >= 1);
      CHECK(a.mmse == t.c_at(a.alpha_star));
      CHECK(std::abs(realized_u(t, spec) - q_dc(spec, t.c_at(a.alpha_star), a.alpha_star)) <= 1e-12);
      CHECK(a.ad_value == q_ad(spec, a.mmse, a.alpha_star));
    }
  }
}

TEST_CASE("vanishing mse weight drives the response towards full acceptance") {
  const EnvelopeTable t = build_envelope_table(test::unit_uniform(), 3.0);
  std::size_t prev = 0;
  for (double w : {1e-1, 1e-3, 1e-6}) {
    const BestResponse br = best_response(t, {LinearDc{1.0}, WeightedSumAd{w, 1.0}});
    CHECK(br.alpha_index >= prev);
    prev = br.alpha_index;
  }
  CHECK(t.alpha_grid()[prev] == 1.0);
}

TEST_CASE("ties are broken towards the lowest dc utility") {
  // gamma = 0 makes Q_DC = alpha; a flat adversary objective on the grid then
  // ties everywhere and the chosen point must minimize alpha.
  const EnvelopeTable t = build_envelope_table(test::unit_uniform(), 2.0);
  const UtilitySpec spec{LinearDc{0.0}, WeightedSumAd{1e-300, 1e-300}};
  const BestResponse br = best_response(t, spec);
  CHECK(br.tie_count == t.alpha_grid().size());
  CHECK(br.alpha_star == t.alpha_min());
}

TEST_CASE("complete information solver") {
  const Scenario s = test::unit_uniform();
  const UtilitySpec spec{LinearDc{1.0}, WeightedSumAd{1e-9, 1.0}};
  const std::vector<double> grid = linspace(2.0, 6.0, 41);
  const CompleteInfoSolution sol = solve_complete_info(s, spec, grid, {}, 2);
  // with alpha* = 1 everywhere the problem reduces to a 1-D scan of Q_DC(c(1), 1)
  double best_eta = grid[0];
  double best = -1e300;
  for (double eta : grid) {
    const double v = 1.0 - build_envelope_table(s, eta).c_at(1.0);
    if (v > best) {
      best = v;
      best_eta = eta;
    }
  }
  CHECK(sol.eta_hat == best_eta);
  CHECK(sol.dc_value == doctest::Approx(best).epsilon(1e-12));
  for (const auto& r : sol.responses) CHECK(r.alpha_star == 1.0);

  const std::vector<double> single{3.7};
  CHECK(solve_complete_info(s, spec, single).eta_hat == 3.7);
}

TEST_CASE("realized U examples") {
  const Scenario s = test::unit_uniform();
  CHECK(realized_u(s, {LinearDc{1.0}, WeightedSumAd{1e-9, 1.0}}, 2.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  for (double eta : {2.0, 3.1, 5.0}) {
    const EnvelopeTable t = build_envelope_table(s, eta);
    const UtilitySpec spec{LinearDc{0.0}, ProductAd{1.0}};
    CHECK(realized_u(t, spec) == best_response(t, spec).alpha_star);
  }
}

TEST_CASE("realized U on a finer grid stays within the Lipschitz band of the coarse one") {
  const Scenario s = Scenario::create(0.1, 1e4, NoiseKind::UniformSymmetric);
  const UtilitySpec spec{LinearDc{1.0}, ProductAd{1.0}};
  const std::vector<double> coarse_eta = linspace(2.0, 6.0, 41);
  const std::vector<double> fine_eta = linspace(2.0, 6.0, 401);
  const EnvelopeBank coarse(s, coarse_eta, {}, 2);
  const EnvelopeBank fine(s, fine_eta, {}, 2);
  const auto uc = realized_u_curve(coarse, spec);
  const auto uf = realized_u_curve(fine, spec);
  const auto lip = lipschitz_from_samples(spec, fine.tables(), fine.etas(), uf);
  REQUIRE(lip.boundaries.empty());
  const double step = coarse_eta[1] - coarse_eta[0];
  for (std::size_t i = 0; i < fine_eta.size(); ++i) {
    const std::size_t j = std::min<std::size_t>(i / 10, coarse_eta.size() - 2);
    const double t = (fine_eta[i] - coarse_eta[j]) / step;
    const double interp = (1.0 - t) * uc[j] + t * uc[j + 1];
    CHECK(std::abs(uf[i] - interp) <= lip.profile.big_l * step + 1e-12);
  }
}
