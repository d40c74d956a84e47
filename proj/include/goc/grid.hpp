#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace goc {

/// `count` evenly spaced points from lo to hi inclusive. Point i is
/// lo + (hi - lo) * (i / (count - 1)), so a grid whose spacing divides another's
/// reproduces the shared points bit for bit.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double span = hi - lo;
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + span * (static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

}  // namespace goc
