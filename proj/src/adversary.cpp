#include "goc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "goc/parallel.hpp"

namespace goc {

BestResponse best_response(const EnvelopeTable& table, const UtilitySpec& spec) {
  const auto alpha = table.alpha_grid();
  const auto c = table.c_values();

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alpha.size(); ++i) best = std::max(best, q_ad(spec, c[i], alpha[i]));
  const double tol = tie_tolerance * std::max(1.0, std::abs(best));

  BestResponse br;
  br.eta = table.eta();
  br.tie_count = 0;
  double worst_for_dc = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double ad = q_ad(spec, c[i], alpha[i]);
    if (ad < best - tol) continue;
    ++br.tie_count;
    const double dc = q_dc(spec, c[i], alpha[i]);
    if (dc < worst_for_dc) {
      worst_for_dc = dc;
      br.alpha_index = i;
      br.alpha_star = alpha[i];
      br.mmse = c[i];
      br.ad_value = ad;
      br.dc_value = dc;
    }
  }
  return br;
}

CompleteInfoSolution solve_complete_info(const EnvelopeBank& bank, const UtilitySpec& spec) {
  if (bank.etas().empty()) throw std::invalid_argument("solve_complete_info: empty eta grid");
  CompleteInfoSolution sol;
  sol.responses.reserve(bank.etas().size());
  for (const EnvelopeTable& t : bank.tables()) sol.responses.push_back(best_response(t, spec));
  std::size_t best = 0;
  for (std::size_t i = 1; i < sol.responses.size(); ++i) {
    if (sol.responses[i].dc_value > sol.responses[best].dc_value) best = i;
  }
  sol.eta_hat = sol.responses[best].eta;
  sol.dc_value = sol.responses[best].dc_value;
  return sol;
}

CompleteInfoSolution solve_complete_info(const Scenario& scenario, const UtilitySpec& spec,
                                         std::span<const double> eta_grid,
                                         const EnvelopeOptions& options, unsigned threads) {
  EnvelopeBank bank(scenario, std::vector<double>(eta_grid.begin(), eta_grid.end()), options,
                    threads);
  return solve_complete_info(bank, spec);
}

double realized_u(const EnvelopeTable& table, const UtilitySpec& spec) {
  const BestResponse br = best_response(table, spec);
  return q_dc(spec, br.mmse, br.alpha_star);
}

double realized_u(const Scenario& scenario, const UtilitySpec& spec, double eta,
                  const EnvelopeOptions& options) {
  return realized_u(build_envelope_table(scenario, eta, options), spec);
}

std::vector<double> realized_u_curve(const EnvelopeBank& bank, const UtilitySpec& spec) {
  std::vector<double> u;
  u.reserve(bank.tables().size());
  for (const EnvelopeTable& t : bank.tables()) u.push_back(realized_u(t, spec));
  return u;
}

}  // namespace goc
