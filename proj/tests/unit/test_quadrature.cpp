#include <cmath>
#include <numbers>

#include "doctest.h"
#include "goc/quadrature.hpp"

using namespace goc;

TEST_CASE("cubics are integrated exactly") {
  auto f = [](double x) { return 3.0 * x * x * x - x + 2.0; };
  // antiderivative 3/4 x^4 - x^2/2 + 2x
  auto F = [](double x) { return 0.75 * x * x * x * x - 0.5 * x * x + 2.0 * x; };
  CHECK(adaptive_simpson(f, -1.0, 2.0) == doctest::Approx(F(2.0) - F(-1.0)).epsilon(1e-14));
}

TEST_CASE("smooth integrands reach the tolerance") {
  CHECK(std::abs(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) - 2.0) < 1e-10);
  CHECK(std::abs(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0) - (std::numbers::e - 1.0)) < 1e-10);
}

TEST_CASE("reversed and empty ranges") {
  auto f = [](double x) { return x * x; };
  CHECK(adaptive_simpson(f, 1.0, 0.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(adaptive_simpson(f, 0.5, 0.5) == 0.0);
}

TEST_CASE("a narrow peak is not missed by the first estimate") {
  // Peak between the five initial nodes of [-1, 1].
  const double c = 0.37;
  const double w = 0.01;
  auto f = [&](double x) { return std::exp(-0.5 * (x - c) * (x - c) / (w * w)); };
  const double exact = w * std::sqrt(2.0 * std::numbers::pi);
  CHECK(std::abs(adaptive_simpson(f, -1.0, 1.0) - exact) < 1e-9);
}

TEST_CASE("depth limit raises IntegrationError") {
  auto step = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  CHECK_THROWS_AS(adaptive_simpson(step, 0.0, 1.0, 1e-14, 8), IntegrationError);
}
