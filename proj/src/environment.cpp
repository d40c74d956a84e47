#include "goc/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace goc {

MixtureAdversary::MixtureAdversary(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("mixture adversary: no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      throw std::invalid_argument("mixture adversary: weights must lie in [0, 1]");
    }
    if (!std::isfinite(c.offset)) throw std::invalid_argument("mixture adversary: bad offset");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "mixture adversary: weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

MixtureAdversary MixtureAdversary::point_mass(double offset) {
  return MixtureAdversary({{offset, 1.0}});
}

MixtureAdversary MixtureAdversary::realizing(const EnvelopeTable& table, double alpha) {
  const auto q = table.q_grid();
  const auto z = table.z_grid();
  const auto hull = table.hull_vertices();
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("mixture adversary: alpha outside [0, 1]");
  }
  // Hull segment [q[l], q[r]] containing alpha.
  std::size_t seg = 0;
  while (seg + 2 < hull.size() && alpha > q[hull[seg + 1]]) ++seg;
  const std::size_t l = hull[seg];
  const std::size_t r = hull[seg + 1];
  if (alpha <= q[l]) return point_mass(z[l]);
  if (alpha >= q[r]) return point_mass(z[r]);
  const double w_r = (alpha - q[l]) / (q[r] - q[l]);
  return MixtureAdversary({{z[l], 1.0 - w_r}, {z[r], w_r}});
}

double MixtureAdversary::draw_offset(RandomStream& rng) const {
  double z = components_.back().offset;
  if (components_.size() > 1) {
    const double p = rng.uniform();
    double acc = 0.0;
    for (const auto& c : components_) {
      acc += c.weight;
      if (p < acc) {
        z = c.offset;
        break;
      }
    }
  }
  return rng.uniform() < 0.5 ? z : -z;
}

namespace {

// k and nu extended beyond the offset domain: every offset above (eta+1) delta
// is always rejected, and |z| below (eta-1) delta is always accepted.
double acceptance_of(const Scenario& s, double eta, double z) {
  const OffsetDomain dom = OffsetDomain::of(s, eta);
  z = std::abs(z);
  if (z >= dom.z_hi) return 0.0;
  if (z <= dom.z_lo) return 1.0;
  return k_eta(s, eta, z);
}

double error_mass_of(const Scenario& s, double eta, double z) {
  const OffsetDomain dom = OffsetDomain::of(s, eta);
  z = std::abs(z);
  if (z >= dom.z_hi) return 0.0;
  if (z <= dom.z_lo) {
    // Whole support accepted: E[(n + z)^2] = E[n^2] + z^2 by symmetry.
    const double second_moment = nu_eta(s, eta, dom.z_lo) - dom.z_lo * dom.z_lo;
    return second_moment + z * z;
  }
  return nu_eta(s, eta, z);
}

}  // namespace

double MixtureAdversary::expected_acceptance(const Scenario& scenario, double eta) const {
  double total = 0.0;
  for (const auto& c : components_) total += c.weight * acceptance_of(scenario, eta, c.offset);
  return total;
}

double MixtureAdversary::expected_mse(const Scenario& scenario, double eta) const {
  double num = 0.0;
  double den = 0.0;
  for (const auto& c : components_) {
    num += c.weight * error_mass_of(scenario, eta, c.offset);
    den += c.weight * acceptance_of(scenario, eta, c.offset);
  }
  if (den <= 0.0) throw EmptyConditionalError("mixture adversary is never accepted");
  return num / (4.0 * den);
}

RoundObservation step_bernoulli(double alpha, double eta, std::uint64_t round,
                                RandomStream& rng) {
  RoundObservation obs;
  obs.round = round;
  obs.eta_committed = eta;
  obs.accepted = rng.bernoulli(alpha);
  return obs;
}

RoundObservation step_physical(const Scenario& scenario, double eta,
                               const MixtureAdversary& adversary, std::uint64_t round,
                               RandomStream& rng) {
  if (!(eta >= 2.0)) throw std::invalid_argument("step_physical: eta must be >= 2");
  const double u = scenario.big_m * (2.0 * rng.uniform() - 1.0);
  const double y_honest = u + scenario.noise.sample(rng);
  const double y_adv = u + adversary.draw_offset(rng);
  const bool honest_first = rng.uniform() < 0.5;
  const double y1 = honest_first ? y_honest : y_adv;
  const double y2 = honest_first ? y_adv : y_honest;

  RoundObservation obs;
  obs.round = round;
  obs.eta_committed = eta;
  obs.honest_first = honest_first;
  obs.u_true = u;
  obs.accepted = std::abs(y1 - y2) <= eta * scenario.delta;
  if (obs.accepted) obs.estimate = 0.5 * (y1 + y2);
  return obs;
}

ConditionalMse empirical_conditional_mse(std::span<const RoundObservation> observations) {
  // Welford over the accepted squared errors.
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  for (const auto& obs : observations) {
    if (!obs.accepted || !obs.estimate || !obs.u_true) continue;
    const double e = *obs.u_true - *obs.estimate;
    const double x = e * e;
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  if (n == 0) throw EmptyConditionalError("conditional MSE: no accepted rounds");
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return ConditionalMse{mean, std::sqrt(var / static_cast<double>(n)), n};
}

ResponseCache::ResponseCache(const Scenario& scenario, const EnvelopeBank& bank,
                             const UtilitySpec& spec)
    : scenario_(scenario) {
  const auto etas = bank.etas();
  etas_.assign(etas.begin(), etas.end());
  responses_.reserve(etas_.size());
  adversaries_.reserve(etas_.size());
  for (const EnvelopeTable& t : bank.tables()) {
    responses_.push_back(best_response(t, spec));
    adversaries_.push_back(MixtureAdversary::realizing(t, responses_.back().alpha_star));
  }
}

std::size_t ResponseCache::index(double eta) const {
  auto it = std::lower_bound(etas_.begin(), etas_.end(), eta - 1e-12);
  if (it == etas_.end() || std::abs(*it - eta) > 1e-12) {
    std::ostringstream msg;
    msg << "no cached best response for eta = " << eta;
    throw std::out_of_range(msg.str());
  }
  return static_cast<std::size_t>(it - etas_.begin());
}

const BestResponse& ResponseCache::response(double eta) const { return responses_[index(eta)]; }

const MixtureAdversary& ResponseCache::adversary(double eta) const {
  return adversaries_[index(eta)];
}

Environment::Environment(const ResponseCache& cache, EnvMode mode)
    : cache_(&cache), mode_(mode) {
  if (const auto* p = std::get_if<PhysicalMode>(&mode_); p && p->samples_per_round < 1) {
    throw std::invalid_argument("env.samples_per_round: must be >= 1");
  }
}

std::size_t Environment::games_per_round() const {
  if (const auto* p = std::get_if<PhysicalMode>(&mode_)) return p->samples_per_round;
  return 1;
}

RoundObservation Environment::step(double eta, RandomStream& rng) {
  const std::uint64_t round = ++round_;
  if (std::holds_alternative<BernoulliMode>(mode_)) {
    return step_bernoulli(cache_->response(eta).alpha_star, eta, round, rng);
  }
  return step_physical(cache_->scenario(), eta, cache_->adversary(eta), round, rng);
}

std::size_t Environment::play(double eta, RandomStream& rng) {
  if (std::holds_alternative<BernoulliMode>(mode_)) {
    ++round_;
    return rng.bernoulli(cache_->response(eta).alpha_star) ? 1 : 0;
  }
  std::size_t accepted = 0;
  const std::size_t games = games_per_round();
  for (std::size_t g = 0; g < games; ++g) {
    if (step(eta, rng).accepted) ++accepted;
  }
  return accepted;
}

}  // namespace goc
