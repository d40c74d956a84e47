#include "goc/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "goc/grid.hpp"

namespace goc {
namespace {

struct OffsetSamples {
  std::vector<double> z;
  std::vector<double> k;
  std::vector<double> nu;
};

OffsetSamples sample_offsets(const Scenario& scenario, double eta, std::size_t points) {
  const OffsetDomain dom = OffsetDomain::of(scenario, eta);
  OffsetSamples s;
  s.z = linspace(dom.z_lo, dom.z_hi, points);
  s.k.reserve(points);
  s.nu.reserve(points);
  for (double z : s.z) {
    s.k.push_back(k_eta(scenario, eta, z));
    s.nu.push_back(nu_eta(scenario, eta, z));
  }
  return s;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  OracleWitness witness;
  double acceptance = 0.0;
};

// Best two-point mixture of the sampled offsets: every weight on the w grid,
// plus the weight at which the acceptance constraint binds.
Candidate best_pair(const OffsetSamples& s, double alpha, std::size_t w_points) {
  const std::vector<double> weights = linspace(0.0, 1.0, w_points);
  const double slack = 1e-12;
  Candidate best;
  auto consider = [&](std::size_t i, std::size_t j, double w) {
    const double acc = w * s.k[i] + (1.0 - w) * s.k[j];
    if (!(acc >= alpha - slack) || acc <= 0.0) return;
    const double v = (w * s.nu[i] + (1.0 - w) * s.nu[j]) / (4.0 * acc);
    if (v > best.value) {
      best.value = v;
      best.witness = OracleWitness{s.z[i], s.z[j], w};
      best.acceptance = acc;
    }
  };
  const std::size_t n = s.z.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::max(s.k[i], s.k[j]) < alpha - slack) continue;
      for (double w : weights) consider(i, j, w);
      const double dk = s.k[i] - s.k[j];
      if (dk != 0.0) {
        const double w = (alpha - s.k[j]) / dk;
        if (w > 0.0 && w < 1.0) consider(i, j, w);
      }
    }
  }
  return best;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("oracle: alpha must lie in (0, 1]");
  }
}

}  // namespace

OracleResult two_point_oracle(const Scenario& scenario, const EnvelopeTable& table, double alpha,
                              const OracleGrid& grid) {
  require_alpha(alpha);
  if (grid.z_points < 2 || grid.w_points < 2) {
    throw std::invalid_argument("oracle: grids need at least 2 points");
  }
  const OffsetSamples s = sample_offsets(scenario, table.eta(), grid.z_points);
  const Candidate best = best_pair(s, alpha, grid.w_points);
  if (!std::isfinite(best.value)) throw std::domain_error("oracle: no feasible mixture");
  OracleResult r;
  r.eta = table.eta();
  r.alpha = alpha;
  r.oracle_value = best.value;
  r.envelope_value = table.c_at(alpha);
  r.witness = best.witness;
  r.witness_acceptance = best.acceptance;
  return r;
}

double single_point_oracle(const Scenario& scenario, double eta, double alpha,
                           std::size_t z_points) {
  require_alpha(alpha);
  const OffsetSamples s = sample_offsets(scenario, eta, z_points);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    if (s.k[i] >= alpha && s.k[i] > 0.0) best = std::max(best, s.nu[i] / (4.0 * s.k[i]));
  }
  return best;
}

double two_point_value(const Scenario& scenario, double eta, double alpha, std::size_t z_points,
                       std::size_t w_points) {
  require_alpha(alpha);
  const OffsetSamples s = sample_offsets(scenario, eta, z_points);
  return best_pair(s, alpha, w_points).value;
}

double three_point_oracle(const Scenario& scenario, double eta, double alpha,
                          std::size_t z_points, std::size_t w_points) {
  require_alpha(alpha);
  if (w_points < 2) throw std::invalid_argument("oracle: w grid needs at least 2 points");
  const OffsetSamples s = sample_offsets(scenario, eta, z_points);
  const std::size_t steps = w_points - 1;
  double best = -std::numeric_limits<double>::infinity();
  const std::size_t n = s.z.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        for (std::size_t p = 0; p <= steps; ++p) {
          for (std::size_t q = 0; p + q <= steps; ++q) {
            const double wi = static_cast<double>(p) / static_cast<double>(steps);
            const double wj = static_cast<double>(q) / static_cast<double>(steps);
            const double wl = 1.0 - wi - wj;
            const double acc = wi * s.k[i] + wj * s.k[j] + wl * s.k[l];
            if (acc < alpha || acc <= 0.0) continue;
            const double v = (wi * s.nu[i] + wj * s.nu[j] + wl * s.nu[l]) / (4.0 * acc);
            best = std::max(best, v);
          }
        }
      }
    }
  }
  return best;
}

}  // namespace goc
