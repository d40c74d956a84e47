#include "goc/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goc/adversary.hpp"
#include "goc/grid.hpp"

namespace goc {

void LipschitzProfile::validate() const {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw std::invalid_argument("lipschitz.ell: must be > 0");
  if (!(big_l > 0.0) || !std::isfinite(big_l)) {
    throw std::invalid_argument("lipschitz.L: must be > 0");
  }
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("lipschitz.d: must be > 0");
}

LipschitzEstimate lipschitz_from_samples(const UtilitySpec& spec,
                                         std::span<const EnvelopeTable> tables,
                                         std::span<const double> etas,
                                         std::span<const double> u_values) {
  if (etas.size() < 2 || etas.size() != u_values.size()) {
    throw std::invalid_argument("estimate_lipschitz: need >= 2 matching eta/U samples");
  }

  double ell = 0.0;
  for (const EnvelopeTable& t : tables) {
    const auto alpha = t.alpha_grid();
    const auto c = t.c_values();
    double prev = q_dc(spec, c[0], alpha[0]);
    for (std::size_t i = 1; i < alpha.size(); ++i) {
      const double cur = q_dc(spec, c[i], alpha[i]);
      ell = std::max(ell, std::abs(cur - prev) / (alpha[i] - alpha[i - 1]));
      prev = cur;
    }
  }

  std::vector<double> slopes(etas.size() - 1);
  for (std::size_t i = 0; i + 1 < etas.size(); ++i) {
    slopes[i] = std::abs(u_values[i + 1] - u_values[i]) / (etas[i + 1] - etas[i]);
  }
  std::vector<double> sorted = slopes;  // median via nth_element
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double threshold = jump_factor * median;

  LipschitzEstimate est;
  est.resolution = etas.size();
  std::vector<bool> jump(slopes.size(), false);
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] > threshold) {
      jump[i] = true;
      est.boundaries.push_back(0.5 * (etas[i] + etas[i + 1]));
    }
  }

  // L from slopes over a fixed eta window rather than adjacent samples: the
  // best response is quantized to the alpha grid, and adjacent differences
  // amplify that quantization as the eta grid is refined. Windows stop short
  // of detected jumps.
  const double window = lipschitz_window_fraction * (etas.back() - etas.front());
  double big_l = 0.0;
  for (std::size_t i = 0; i + 1 < etas.size(); ++i) {
    if (jump[i]) continue;
    std::size_t j = i + 1;
    while (j + 1 < etas.size() && etas[j] - etas[i] < window && !jump[j]) ++j;
    big_l = std::max(big_l, std::abs(u_values[j] - u_values[i]) / (etas[j] - etas[i]));
  }

  double d = etas.back() - etas.front();
  double prev = etas.front();
  for (double x : est.boundaries) {
    d = std::min(d, x - prev);
    prev = x;
  }
  d = std::min(d, etas.back() - prev);

  est.profile = LipschitzProfile{std::max(ell, min_lipschitz_slope),
                                 std::max(big_l, min_lipschitz_slope), d};
  return est;
}

LipschitzEstimate estimate_lipschitz(const Scenario& scenario, const UtilitySpec& spec, double a,
                                     double b, std::size_t resolution,
                                     const EnvelopeOptions& options) {
  if (!(b > a)) throw std::invalid_argument("estimate_lipschitz: need b > a");
  if (resolution < 2) throw std::invalid_argument("estimate_lipschitz: resolution must be >= 2");
  const std::vector<double> etas = linspace(a, b, resolution);
  std::vector<EnvelopeTable> tables;
  tables.reserve(resolution);
  std::vector<double> u(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    tables.push_back(build_envelope_table(scenario, etas[i], options));
    u[i] = realized_u(tables.back(), spec);
  }
  return lipschitz_from_samples(spec, tables, etas, u);
}

}  // namespace goc
