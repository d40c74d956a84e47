#pragma once

#include <stdexcept>
#include <string>

#include "goc/random.hpp"

namespace goc {

enum class NoiseKind { UniformSymmetric, TruncatedGaussian };

std::string to_string(NoiseKind kind);

// Symmetric noise of the honest node, supported on [-delta, delta].
class HonestNoiseModel {
 public:
  static HonestNoiseModel uniform(double delta);
  static HonestNoiseModel truncated_gaussian(double sigma, double delta);

  NoiseKind kind() const { return kind_; }
  double delta() const { return delta_; }
  /// Zero for the uniform family.
  double sigma() const { return sigma_; }

  double pdf(double x) const;
  double cdf(double x) const;
  /// Always lands in [-delta, delta].
  double sample(RandomStream& rng) const;

  // The envelope calculus inverts the CDF on [-delta, delta]; a density that
  // underflows at the edges makes that inverse numerically meaningless.
  bool has_strict_cdf() const;

 private:
  HonestNoiseModel(NoiseKind kind, double sigma, double delta);

  NoiseKind kind_;
  double sigma_;
  double delta_;
  double normalizer_;  // mass of N(0, sigma^2) inside [-delta, delta]
};

struct Scenario {
  double delta;
  double big_m;
  HonestNoiseModel noise;

  /// Validates delta > 0, big_m > 0, delta / big_m <= max_delta_ratio.
  static Scenario create(double delta, double big_m, NoiseKind kind, double sigma = 0.0);

  /// (eta^2 + 4)(eta + 2) delta^3 / M: gap between the upper and lower bounds on c.
  double slack(double eta) const;
};

inline constexpr double max_delta_ratio = 1e-2;

}  // namespace goc
