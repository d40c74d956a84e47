#include "goc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "goc/parallel.hpp"
#include "goc/quadrature.hpp"

namespace goc {
namespace {

constexpr double quadrature_tolerance = 1e-10;

void require_eta(double eta) {
  if (!(eta >= 2.0) || !std::isfinite(eta)) {
    std::ostringstream msg;
    msg << "eta must be finite and >= 2, got " << eta;
    throw std::invalid_argument(msg.str());
  }
}

// Offsets within rounding of the domain ends are snapped onto it.
double checked_offset(const Scenario& scenario, double eta, double z) {
  require_eta(eta);
  const OffsetDomain dom = OffsetDomain::of(scenario, eta);
  const double slop = 1e-12 * std::max(1.0, std::abs(dom.z_hi));
  if (!(z >= dom.z_lo - slop && z <= dom.z_hi + slop)) {
    std::ostringstream msg;
    msg << "offset z = " << z << " outside [" << dom.z_lo << ", " << dom.z_hi
        << "] for eta = " << eta;
    throw std::domain_error(msg.str());
  }
  return std::clamp(z, dom.z_lo, dom.z_hi);
}

}  // namespace

OffsetDomain OffsetDomain::of(const Scenario& scenario, double eta) {
  return OffsetDomain{eta, (eta - 1.0) * scenario.delta, (eta + 1.0) * scenario.delta};
}

double k_eta(const Scenario& scenario, double eta, double z) {
  z = checked_offset(scenario, eta, z);
  return 1.0 - scenario.noise.cdf(z - eta * scenario.delta);
}

double nu_eta(const Scenario& scenario, double eta, double z) {
  z = checked_offset(scenario, eta, z);
  // Rounding in z - eta * delta can land just outside the support, where the
  // pdf jump would stall the quadrature.
  const double lo = std::max(z - eta * scenario.delta, -scenario.delta);
  const double hi = scenario.delta;
  if (lo >= hi) return 0.0;
  const HonestNoiseModel& noise = scenario.noise;
  auto integrand = [&noise, z](double x) { return (x + z) * (x + z) * noise.pdf(x); };
  return adaptive_simpson(integrand, lo, hi, quadrature_tolerance);
}

double k_inverse(const Scenario& scenario, double eta, double q) {
  require_eta(eta);
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream msg;
    msg << "k_inverse: q = " << q << " outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
  const OffsetDomain dom = OffsetDomain::of(scenario, eta);
  if (q == 1.0) return dom.z_lo;
  if (q == 0.0) return dom.z_hi;
  double lo = dom.z_lo;  // k(lo) >= q
  double hi = dom.z_hi;  // k(hi) <= q
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double k = k_eta(scenario, eta, mid);
    if (std::abs(k - q) <= 1e-14) break;
    if (k > q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double h_eta(const Scenario& scenario, double eta, double q) {
  return nu_eta(scenario, eta, k_inverse(scenario, eta, q));
}

std::vector<std::size_t> upper_hull_indices(std::span<const double> q,
                                            std::span<const double> values) {
  if (q.size() != values.size()) {
    throw std::invalid_argument("concave_envelope: q and values differ in length");
  }
  if (q.size() < 2) throw std::invalid_argument("concave_envelope: need at least 2 points");
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (!(q[i] > q[i - 1])) {
      throw std::invalid_argument("concave_envelope: q must be strictly ascending");
    }
  }
  std::vector<std::size_t> hull;
  hull.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b when it lies on or below the chord a -> i.
      const double lhs = (values[b] - values[a]) * (q[i] - q[a]);
      const double rhs = (values[i] - values[a]) * (q[b] - q[a]);
      if (lhs <= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

std::vector<double> concave_envelope(std::span<const double> q, std::span<const double> values) {
  const std::vector<std::size_t> hull = upper_hull_indices(q, values);
  std::vector<double> out(q.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (seg + 1 < hull.size() - 1 && q[i] > q[hull[seg + 1]]) ++seg;
    const std::size_t l = hull[seg];
    const std::size_t r = hull[seg + 1];
    double v;
    if (i == l) {
      v = values[l];
    } else if (i == r) {
      v = values[r];
    } else {
      const double t = (q[i] - q[l]) / (q[r] - q[l]);
      v = values[l] + t * (values[r] - values[l]);
    }
    out[i] = std::max(v, values[i]);
  }
  return out;
}

EnvelopeTable build_envelope_table(const Scenario& scenario, double eta,
                                   const EnvelopeOptions& options) {
  require_eta(eta);
  if (options.grid_size < 101) {
    throw std::invalid_argument("envelope: grid_size must be >= 101");
  }
  if (!(options.alpha_min > 0.0 && options.alpha_min < 1.0)) {
    throw std::invalid_argument("envelope: alpha_min must lie in (0, 1)");
  }
  if (!scenario.noise.has_strict_cdf()) {
    throw std::invalid_argument(
        "envelope: honest noise CDF is not strictly increasing on [-delta, delta] "
        "(density underflows at the support edge)");
  }

  EnvelopeTable t;
  t.eta_ = eta;
  t.alpha_min_ = options.alpha_min;
  t.slack_ = scenario.slack(eta);

  const std::size_t n = options.grid_size;
  t.q_.reserve(n + 1);
  bool inserted = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(n - 1);
    if (!inserted && std::abs(q - options.alpha_min) <= 1e-12) {
      t.q_.push_back(options.alpha_min);
      inserted = true;
      continue;
    }
    if (!inserted && q > options.alpha_min) {
      t.q_.push_back(options.alpha_min);
      inserted = true;
    }
    t.q_.push_back(q);
  }
  t.first_alpha_ = static_cast<std::size_t>(
      std::lower_bound(t.q_.begin(), t.q_.end(), options.alpha_min) - t.q_.begin());

  t.z_.resize(t.q_.size());
  t.h_.resize(t.q_.size());
  for (std::size_t i = 0; i < t.q_.size(); ++i) {
    t.z_[i] = k_inverse(scenario, eta, t.q_[i]);
    t.h_[i] = nu_eta(scenario, eta, t.z_[i]);
  }
  t.h_[0] = 0.0;  // nu at the upper end of the offset domain

  t.hull_ = upper_hull_indices(t.q_, t.h_);
  t.h_star_ = concave_envelope(t.q_, t.h_);

  t.c_.resize(t.q_.size() - t.first_alpha_);
  for (std::size_t i = t.first_alpha_; i < t.q_.size(); ++i) {
    t.c_[i - t.first_alpha_] = std::max(0.0, t.h_star_[i]) / (4.0 * t.q_[i]);
  }
  return t;
}

double EnvelopeTable::c_at(double alpha) const {
  const auto grid = alpha_grid();
  if (!(alpha >= grid.front() - 1e-15 && alpha <= 1.0 + 1e-15)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " outside [" << alpha_min_ << ", 1]";
    throw std::out_of_range(msg.str());
  }
  alpha = std::clamp(alpha, grid.front(), grid.back());
  auto it = std::upper_bound(grid.begin(), grid.end(), alpha);
  if (it == grid.end()) return c_.back();
  const std::size_t r = static_cast<std::size_t>(it - grid.begin());
  const std::size_t l = r - 1;
  const double t = (alpha - grid[l]) / (grid[r] - grid[l]);
  return c_[l] + t * (c_[r] - c_[l]);
}

double EnvelopeTable::h_star_at(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::out_of_range("h_star_at: q outside [0, 1]");
  auto it = std::upper_bound(q_.begin(), q_.end(), q);
  if (it == q_.end()) return h_star_.back();
  const std::size_t r = static_cast<std::size_t>(it - q_.begin());
  const std::size_t l = r - 1;
  const double t = (q - q_[l]) / (q_[r] - q_[l]);
  return h_star_[l] + t * (h_star_[r] - h_star_[l]);
}

EnvelopeBank::EnvelopeBank(const Scenario& scenario, std::vector<double> etas,
                           const EnvelopeOptions& options, unsigned threads)
    : options_(options), etas_(std::move(etas)) {
  std::sort(etas_.begin(), etas_.end());
  etas_.erase(std::unique(etas_.begin(), etas_.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
              etas_.end());
  tables_.resize(etas_.size());
  parallel_for(etas_.size(), threads, [&](std::size_t i) {
    tables_[i] = build_envelope_table(scenario, etas_[i], options_);
  });
}

std::ptrdiff_t EnvelopeBank::find(double eta) const {
  auto it = std::lower_bound(etas_.begin(), etas_.end(), eta - 1e-12);
  if (it == etas_.end() || std::abs(*it - eta) > 1e-12) return -1;
  return it - etas_.begin();
}

bool EnvelopeBank::contains(double eta) const { return find(eta) >= 0; }

const EnvelopeTable& EnvelopeBank::at(double eta) const {
  const std::ptrdiff_t i = find(eta);
  if (i < 0) {
    std::ostringstream msg;
    msg << "no envelope table for eta = " << eta;
    throw std::out_of_range(msg.str());
  }
  return tables_[static_cast<std::size_t>(i)];
}

}  // namespace goc
