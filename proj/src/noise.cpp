#include "goc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace goc {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::UniformSymmetric:
      return "uniform";
    case NoiseKind::TruncatedGaussian:
      return "truncated_gaussian";
  }
  return "unknown";
}

HonestNoiseModel::HonestNoiseModel(NoiseKind kind, double sigma, double delta)
    : kind_(kind), sigma_(sigma), delta_(delta), normalizer_(1.0) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("noise: delta must be positive and finite");
  }
  if (kind == NoiseKind::TruncatedGaussian) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw std::invalid_argument("noise: sigma must be positive and finite");
    }
    normalizer_ = std::erf(delta / (sigma * std::numbers::sqrt2));
  }
}

HonestNoiseModel HonestNoiseModel::uniform(double delta) {
  return HonestNoiseModel(NoiseKind::UniformSymmetric, 0.0, delta);
}

HonestNoiseModel HonestNoiseModel::truncated_gaussian(double sigma, double delta) {
  return HonestNoiseModel(NoiseKind::TruncatedGaussian, sigma, delta);
}

double HonestNoiseModel::pdf(double x) const {
  if (std::abs(x) > delta_) return 0.0;
  if (kind_ == NoiseKind::UniformSymmetric) return 0.5 / delta_;
  const double t = x / sigma_;
  return std::exp(-0.5 * t * t) / (sigma_ * std::sqrt(2.0 * std::numbers::pi) * normalizer_);
}

double HonestNoiseModel::cdf(double x) const {
  if (x <= -delta_) return 0.0;
  if (x >= delta_) return 1.0;
  if (kind_ == NoiseKind::UniformSymmetric) return (x + delta_) / (2.0 * delta_);
  const double v = 0.5 * (1.0 + std::erf(x / (sigma_ * std::numbers::sqrt2)) / normalizer_);
  return std::clamp(v, 0.0, 1.0);
}

double HonestNoiseModel::sample(RandomStream& rng) const {
  if (kind_ == NoiseKind::UniformSymmetric) return delta_ * (2.0 * rng.uniform() - 1.0);
  for (;;) {
    const double x = sigma_ * rng.normal();
    if (std::abs(x) <= delta_) return x;
  }
}

bool HonestNoiseModel::has_strict_cdf() const {
  if (kind_ == NoiseKind::UniformSymmetric) return true;
  return pdf(delta_) >= 1e-12 * pdf(0.0);
}

Scenario Scenario::create(double delta, double big_m, NoiseKind kind, double sigma) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("scenario.delta: must be positive");
  }
  if (!(big_m > 0.0) || !std::isfinite(big_m)) {
    throw std::invalid_argument("scenario.big_m: must be positive");
  }
  if (delta / big_m > max_delta_ratio) {
    std::ostringstream msg;
    msg << "scenario.delta: \xCE\x94 \xE2\x89\xAA M violated (delta / big_m = " << delta / big_m
        << " > " << max_delta_ratio << ")";
    throw std::invalid_argument(msg.str());
  }
  HonestNoiseModel noise = kind == NoiseKind::UniformSymmetric
                               ? HonestNoiseModel::uniform(delta)
                               : HonestNoiseModel::truncated_gaussian(sigma, delta);
  return Scenario{delta, big_m, noise};
}

double Scenario::slack(double eta) const {
  return (eta * eta + 4.0) * (eta + 2.0) * delta * delta * delta / big_m;
}

}  // namespace goc
