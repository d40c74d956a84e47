#pragma once

#include <string>
#include <variant>

namespace goc {

class EnvelopeTable;

// Data collector: PA - gamma * MSE.
struct LinearDc {
  double gamma;
};
// Data collector: PA / (1 + MSE).
struct RatioDc {};

// Adversary: w_mse * MSE + w_pa * PA.
struct WeightedSumAd {
  double w_mse;
  double w_pa;
};
// Adversary: PA^theta * MSE.
struct ProductAd {
  double theta;
};

using DcUtility = std::variant<LinearDc, RatioDc>;
using AdUtility = std::variant<WeightedSumAd, ProductAd>;

struct UtilitySpec {
  DcUtility dc;
  AdUtility ad;

  /// Throws std::invalid_argument on negative gamma or non-positive adversary weights.
  void validate() const;
  std::string describe() const;
};

// Both evaluators take (MSE, PA) in that order everywhere in this codebase.
double q_dc(const UtilitySpec& spec, double mse, double pa);
double q_ad(const UtilitySpec& spec, double mse, double pa);

/// Q_DC(c(alpha), alpha) for one committed eta. Throws std::out_of_range for
/// alpha outside [alpha_min, 1].
double dc_utility_curve(const UtilitySpec& spec, const EnvelopeTable& table, double alpha);

}  // namespace goc
