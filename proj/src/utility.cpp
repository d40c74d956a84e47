#include "goc/utility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "goc/envelope.hpp"

namespace goc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void UtilitySpec::validate() const {
  std::visit(overloaded{[](const LinearDc& u) {
                          if (!(u.gamma >= 0.0) || !std::isfinite(u.gamma)) {
                            throw std::invalid_argument("utility.dc.gamma: must be >= 0");
                          }
                        },
                        [](const RatioDc&) {}},
             dc);
  std::visit(overloaded{[](const WeightedSumAd& u) {
                          if (!(u.w_mse > 0.0) || !std::isfinite(u.w_mse)) {
                            throw std::invalid_argument("utility.ad.w_mse: must be > 0");
                          }
                          if (!(u.w_pa > 0.0) || !std::isfinite(u.w_pa)) {
                            throw std::invalid_argument("utility.ad.w_pa: must be > 0");
                          }
                        },
                        [](const ProductAd& u) {
                          if (!(u.theta > 0.0) || !std::isfinite(u.theta)) {
                            throw std::invalid_argument("utility.ad.theta: must be > 0");
                          }
                        }},
             ad);
}

std::string UtilitySpec::describe() const {
  std::ostringstream s;
  std::visit(overloaded{[&s](const LinearDc& u) { s << "dc=linear(gamma=" << u.gamma << ")"; },
                        [&s](const RatioDc&) { s << "dc=ratio"; }},
             dc);
  std::visit(overloaded{[&s](const WeightedSumAd& u) {
                          s << " ad=weighted_sum(w_mse=" << u.w_mse << ",w_pa=" << u.w_pa << ")";
                        },
                        [&s](const ProductAd& u) { s << " ad=product(theta=" << u.theta << ")"; }},
             ad);
  return s.str();
}

double q_dc(const UtilitySpec& spec, double mse, double pa) {
  return std::visit(overloaded{[&](const LinearDc& u) { return pa - u.gamma * mse; },
                               [&](const RatioDc&) { return pa / (1.0 + mse); }},
                    spec.dc);
}

double q_ad(const UtilitySpec& spec, double mse, double pa) {
  return std::visit(
      overloaded{[&](const WeightedSumAd& u) { return u.w_mse * mse + u.w_pa * pa; },
                 [&](const ProductAd& u) { return std::pow(pa, u.theta) * mse; }},
      spec.ad);
}

double dc_utility_curve(const UtilitySpec& spec, const EnvelopeTable& table, double alpha) {
  return q_dc(spec, table.c_at(alpha), alpha);
}

}  // namespace goc
