#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "goc/noise.hpp"

namespace goc {

// Adversarial offsets z for which the integrals below are defined:
// (eta - 1) delta <= z <= (eta + 1) delta.
struct OffsetDomain {
  double eta;
  double z_lo;
  double z_hi;

  static OffsetDomain of(const Scenario& scenario, double eta);
  bool contains(double z) const { return z >= z_lo && z <= z_hi; }
};

/// Acceptance probability of an adversary sitting at offset z:
/// the honest-noise mass of [z - eta*delta, delta].
double k_eta(const Scenario& scenario, double eta, double z);

/// Integral of (x + z)^2 f(x) over [z - eta*delta, delta]; four times the
/// accepted squared error mass of the midpoint estimate.
double nu_eta(const Scenario& scenario, double eta, double z);

/// Offset z with k_eta(z) = q, found by bisection (|k(z) - q| <= 1e-10).
double k_inverse(const Scenario& scenario, double eta, double q);

double h_eta(const Scenario& scenario, double eta, double q);

/// Upper concave envelope of sampled points (q strictly ascending), evaluated
/// at every input q. Throws std::invalid_argument for < 2 points or non-ascending q.
std::vector<double> concave_envelope(std::span<const double> q, std::span<const double> values);

/// Indices of the points that are vertices of the upper hull.
std::vector<std::size_t> upper_hull_indices(std::span<const double> q,
                                            std::span<const double> values);

struct EnvelopeOptions {
  std::size_t grid_size = 2001;
  double alpha_min = 1e-3;
};

// Sampled h_eta on a q-grid over [0, 1], its concave envelope, and the
// adversary's value curve c(alpha) = h*(alpha) / (4 alpha) on [alpha_min, 1].
class EnvelopeTable {
 public:
  double eta() const { return eta_; }
  double alpha_min() const { return alpha_min_; }

  /// Full sampling grid, including q = 0.
  std::span<const double> q_grid() const { return q_; }
  std::span<const double> z_grid() const { return z_; }
  std::span<const double> h_full() const { return h_; }
  std::span<const double> h_star_full() const { return h_star_; }

  /// Grid restricted to [alpha_min, 1]; alpha_grid().front() == alpha_min.
  std::span<const double> alpha_grid() const { return std::span(q_).subspan(first_alpha_); }
  std::span<const double> h_values() const { return std::span(h_).subspan(first_alpha_); }
  std::span<const double> h_star_values() const {
    return std::span(h_star_).subspan(first_alpha_);
  }
  std::span<const double> c_values() const { return c_; }

  /// Linear interpolation of c on the alpha grid. Throws std::out_of_range
  /// outside [alpha_min, 1].
  double c_at(double alpha) const;
  double h_star_at(double q) const;

  /// Hull vertices over the full grid, ascending in q.
  std::span<const std::size_t> hull_vertices() const { return hull_; }

  /// (eta^2 + 4)(eta + 2) delta^3 / M, reported alongside c but never subtracted.
  double slack() const { return slack_; }

 private:
  friend EnvelopeTable build_envelope_table(const Scenario&, double, const EnvelopeOptions&);

  double eta_ = 0.0;
  double alpha_min_ = 0.0;
  double slack_ = 0.0;
  std::size_t first_alpha_ = 0;
  std::vector<double> q_;
  std::vector<double> z_;
  std::vector<double> h_;
  std::vector<double> h_star_;
  std::vector<double> c_;
  std::vector<std::size_t> hull_;
};

/// Requires eta >= 2, grid_size >= 101, 0 < alpha_min < 1, and a noise model
/// with a strictly increasing CDF.
EnvelopeTable build_envelope_table(const Scenario& scenario, double eta,
                                   const EnvelopeOptions& options = {});

}  // namespace goc

namespace goc {

// Envelope tables for a fixed set of eta values, looked up by exact eta.
// Immutable after construction and safe to share across threads.
class EnvelopeBank {
 public:
  EnvelopeBank() = default;
  EnvelopeBank(const Scenario& scenario, std::vector<double> etas,
               const EnvelopeOptions& options = {}, unsigned threads = 1);

  /// Throws std::out_of_range if eta is not within 1e-12 of a stored value.
  const EnvelopeTable& at(double eta) const;
  bool contains(double eta) const;

  std::span<const double> etas() const { return etas_; }
  std::span<const EnvelopeTable> tables() const { return tables_; }
  const EnvelopeOptions& options() const { return options_; }

 private:
  std::ptrdiff_t find(double eta) const;

  EnvelopeOptions options_;
  std::vector<double> etas_;
  std::vector<EnvelopeTable> tables_;
};

}  // namespace goc
