#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "goc/adversary.hpp"
#include "goc/envelope.hpp"
#include "goc/noise.hpp"
#include "goc/random.hpp"

namespace goc {

struct BernoulliMode {};
struct PhysicalMode {
  std::size_t samples_per_round = 1;  // game instances per committed round
};
using EnvMode = std::variant<BernoulliMode, PhysicalMode>;

struct MixtureComponent {
  double offset;
  double weight;
};

// Adversarial noise as a finite mixture of offsets z; each draw also flips
// the sign of z with probability 1/2 so the law stays symmetric.
class MixtureAdversary {
 public:
  /// Weights must be non-negative and sum to 1 within 1e-12.
  explicit MixtureAdversary(std::vector<MixtureComponent> components);

  static MixtureAdversary point_mass(double offset);

  /// Mixture of the two hull vertices bracketing alpha: acceptance alpha and
  /// conditional MSE h*(alpha) / (4 alpha) = c(alpha).
  static MixtureAdversary realizing(const EnvelopeTable& table, double alpha);

  std::span<const MixtureComponent> components() const { return components_; }

  double draw_offset(RandomStream& rng) const;

  /// Acceptance probability and conditional MSE predicted by the envelope
  /// integrals: sum w k(z) and sum w nu(z) / (4 sum w k(z)).
  double expected_acceptance(const Scenario& scenario, double eta) const;
  double expected_mse(const Scenario& scenario, double eta) const;

 private:
  std::vector<MixtureComponent> components_;
};

struct RoundObservation {
  std::uint64_t round = 0;
  double eta_committed = 0.0;
  bool accepted = false;
  std::optional<double> estimate;  // physical mode, accepted rounds only
  std::optional<double> u_true;    // physical mode only; never shown to a learner
  bool honest_first = false;       // physical mode: order the pair was presented in
};

/// Accept with probability alpha.
RoundObservation step_bernoulli(double alpha, double eta, std::uint64_t round,
                                RandomStream& rng);

/// One physical game instance: u ~ U[-M, M], honest y = u + n_h, adversarial
/// y = u +/- z, random presentation order, accept iff |y1 - y2| <= eta * delta,
/// estimate (y1 + y2) / 2.
RoundObservation step_physical(const Scenario& scenario, double eta,
                               const MixtureAdversary& adversary, std::uint64_t round,
                               RandomStream& rng);

class EmptyConditionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConditionalMse {
  double mse;
  double standard_error;
  std::size_t accepted;
};

/// Mean of (u_true - estimate)^2 over accepted observations. Throws
/// EmptyConditionalError when none was accepted.
ConditionalMse empirical_conditional_mse(std::span<const RoundObservation> observations);

// Best responses and realizing mixtures for every eta the data collector may
// commit to. Built once, read-only afterwards.
class ResponseCache {
 public:
  ResponseCache(const Scenario& scenario, const EnvelopeBank& bank, const UtilitySpec& spec);

  const BestResponse& response(double eta) const;
  const MixtureAdversary& adversary(double eta) const;
  const Scenario& scenario() const { return scenario_; }

 private:
  std::size_t index(double eta) const;

  Scenario scenario_;
  std::vector<double> etas_;
  std::vector<BestResponse> responses_;
  std::vector<MixtureAdversary> adversaries_;
};

// The interaction loop seen from the data collector: commit to eta, the
// myopic adversary replies, one acceptance outcome per game instance comes back.
class Environment {
 public:
  Environment(const ResponseCache& cache, EnvMode mode);

  /// Plays one round at eta and returns the number of accepted game instances
  /// (0 or 1 in Bernoulli mode, up to games_per_round() in physical mode).
  std::size_t play(double eta, RandomStream& rng);

  /// One game instance.
  RoundObservation step(double eta, RandomStream& rng);

  std::size_t games_per_round() const;
  std::uint64_t rounds_played() const { return round_; }
  const EnvMode& mode() const { return mode_; }

 private:
  const ResponseCache* cache_;
  EnvMode mode_;
  std::uint64_t round_ = 0;
};

}  // namespace goc
