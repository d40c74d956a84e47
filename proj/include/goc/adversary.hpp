#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "goc/envelope.hpp"
#include "goc/utility.hpp"

namespace goc {

// The myopic adversary's reply to one committed eta, represented by its
// operating point (alpha, MMSE) rather than an explicit noise density.
struct BestResponse {
  double eta = 0.0;
  double alpha_star = 0.0;
  double mmse = 0.0;  // c_eta(alpha_star)
  double ad_value = 0.0;
  double dc_value = 0.0;
  std::size_t alpha_index = 0;  // index into table.alpha_grid()
  std::size_t tie_count = 1;    // maximizers within tie_tolerance
};

inline constexpr double tie_tolerance = 1e-9;

/// Grid argmax of Q_AD(c(alpha), alpha). Among near-ties (within
/// tie_tolerance * max(1, |best|)) the reply worst for the data collector
/// wins, then the lowest alpha index.
BestResponse best_response(const EnvelopeTable& table, const UtilitySpec& spec);

struct CompleteInfoSolution {
  double eta_hat = 0.0;
  double dc_value = 0.0;
  std::vector<BestResponse> responses;  // one per eta_grid entry
};

/// Known-utility benchmark: best response at every eta, then the eta with the
/// largest data-collector utility (lowest index on ties).
CompleteInfoSolution solve_complete_info(const Scenario& scenario, const UtilitySpec& spec,
                                         std::span<const double> eta_grid,
                                         const EnvelopeOptions& options = {},
                                         unsigned threads = 1);

/// Same, reusing precomputed tables.
CompleteInfoSolution solve_complete_info(const EnvelopeBank& bank, const UtilitySpec& spec);

/// U(eta) = Q_DC(c(alpha(eta)), alpha(eta)).
double realized_u(const Scenario& scenario, const UtilitySpec& spec, double eta,
                  const EnvelopeOptions& options = {});
double realized_u(const EnvelopeTable& table, const UtilitySpec& spec);

/// U at every eta in the bank, in bank order.
std::vector<double> realized_u_curve(const EnvelopeBank& bank, const UtilitySpec& spec);

}  // namespace goc
