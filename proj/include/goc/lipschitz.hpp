#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "goc/envelope.hpp"
#include "goc/utility.hpp"

namespace goc {

struct LipschitzProfile {
  double ell;    // slope bound of alpha -> Q_DC(c_eta(alpha), alpha)
  double big_l;  // slope bound of U(eta) inside each piece
  double d;      // narrowest piece width

  void validate() const;
};

struct LipschitzEstimate {
  LipschitzProfile profile;
  std::vector<double> boundaries;  // interior piece boundaries in eta
  std::size_t resolution = 0;
};

// Slopes below this are reported as this value so the profile stays positive.
inline constexpr double min_lipschitz_slope = 1e-9;
// A finite-difference slope this many times the median marks a piece boundary.
inline constexpr double jump_factor = 50.0;
inline constexpr double lipschitz_window_fraction = 0.025;  // of b - a, for L

/// Finite-difference estimate of (ell, L, d) on a uniform grid of `resolution`
/// eta values over [a, b].
LipschitzEstimate estimate_lipschitz(const Scenario& scenario, const UtilitySpec& spec, double a,
                                     double b, std::size_t resolution,
                                     const EnvelopeOptions& options = {});

/// Same estimate from precomputed inputs: ell from the tables, L and d from
/// U sampled at the (ascending, uniform) eta grid.
LipschitzEstimate lipschitz_from_samples(const UtilitySpec& spec,
                                         std::span<const EnvelopeTable> tables,
                                         std::span<const double> etas,
                                         std::span<const double> u_values);

}  // namespace goc
