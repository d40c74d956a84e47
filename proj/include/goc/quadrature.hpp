#pragma once

#include <cmath>
#include <stdexcept>

namespace goc {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth, int forced) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (forced <= 0 && std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  if (depth <= 0) {
    throw IntegrationError("adaptive Simpson: recursion limit reached before tolerance");
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, forced - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, forced - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance abs_tol.
/// The first few levels are always subdivided so a peaked integrand cannot slip
/// through the initial five-point estimate. Throws IntegrationError if
/// max_depth bisections do not reach the tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-10,
                        int max_depth = 50) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  constexpr int forced_levels = 3;
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, forced_levels);
}

}  // namespace goc
