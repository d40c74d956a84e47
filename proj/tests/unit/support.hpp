#pragma once

#include <cmath>

#include "goc/noise.hpp"

namespace goc::test {

// Unit-width honest noise, the setting of most closed-form checks.
inline Scenario unit_uniform() { return Scenario::create(1.0, 1e4, NoiseKind::UniformSymmetric); }
inline Scenario unit_gaussian(double sigma = 0.5) {
  return Scenario::create(1.0, 1e4, NoiseKind::TruncatedGaussian, sigma);
}

// Closed forms for uniform noise on [-d, d].
inline double uniform_k(double eta, double d, double z) { return ((eta + 1.0) * d - z) / (2.0 * d); }
inline double uniform_nu(double eta, double d, double z) {
  const double a = z + d;
  const double b = 2.0 * z - eta * d;
  return (a * a * a - b * b * b) / (6.0 * d);
}
inline double uniform_h(double eta, double d, double q) {
  return uniform_nu(eta, d, (eta + 1.0) * d - 2.0 * d * q);
}

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace goc::test
