#include <doctest.h>

#include <cmath>
#include <random>

#include "cpl/numeric_kernels.hpp"

using namespace cpl;

TEST_CASE("semi-infinite quadrature: exponential moments") {
  QuadratureSpec spec;
  auto q0 = integrate_semi_infinite([](double y) { return std::exp(-y); }, 0.0, spec);
  CHECK(q0.value == doctest::Approx(1.0).epsilon(1e-10));

  auto q2 = integrate_semi_infinite([](double y) { return y * y * std::exp(-y); }, 0.0, spec);
  CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-10));

  // antiderivative -e^{-y}(y^2 + 2y + 2) gives 5/e from lower = 1
  auto q1 = integrate_semi_infinite([](double y) { return y * y * std::exp(-y); }, 1.0, spec);
  CHECK(q1.value == doctest::Approx(1.8393972058572117).epsilon(1e-10));
  CHECK(q1.error_estimate <= 1e-8 * q1.value);
}

TEST_CASE("semi-infinite quadrature: linearity over random poly * exp") {
  QuadratureSpec spec;
  std::mt19937 rng(20260808);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int it = 0; it < 25; ++it) {
    const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng);
    const double d0 = coeff(rng), d1 = coeff(rng), d2 = coeff(rng);
    const double a = coeff(rng), b = coeff(rng);
    auto f = [=](double y) { return (c0 + c1 * y + c2 * y * y) * std::exp(-y); };
    auto g = [=](double y) { return (d0 + d1 * y + d2 * y * y) * std::exp(-y); };
    auto fg = [=](double y) { return a * f(y) + b * g(y); };
    const double lhs = integrate_semi_infinite(fg, 0.5, spec).value;
    const double rhs = a * integrate_semi_infinite(f, 0.5, spec).value +
                       b * integrate_semi_infinite(g, 0.5, spec).value;
    const double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
    CHECK(std::abs(lhs - rhs) <= 2.0 * spec.relative_tolerance * scale);
  }
}

TEST_CASE("semi-infinite quadrature: budget exhaustion and spec validation") {
  QuadratureSpec tight;
  tight.max_refinements = 1;
  tight.relative_tolerance = 1e-10;
  auto wiggly = [](double y) { return std::exp(-y) * std::cos(40.0 * y) * y * y; };
  CHECK_THROWS_AS(integrate_semi_infinite(wiggly, 0.0, tight), NonConvergence);

  QuadratureSpec bad;
  bad.relative_tolerance = 0.5;  // outside (0, 1e-2]
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, bad),
                  ValidationError);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, -1.0, QuadratureSpec{}),
                  DomainError);
}

TEST_CASE("series: geometric sums and the primed convention") {
  SeriesSpec spec;
  auto pow2 = [](long l) { return std::pow(2.0, -static_cast<double>(l)); };
  CHECK(sum_series(pow2, spec, false).value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(sum_series(pow2, spec, true).value == doctest::Approx(1.5).epsilon(1e-11));

  // closed form 1/(1 - e^{-0.1}) - 1/2 computed independently here
  auto slow = [](long l) { return std::exp(-0.1 * static_cast<double>(l)); };
  const double expected = 1.0 / (1.0 - std::exp(-0.1)) - 0.5;
  CHECK(sum_series(slow, spec, true).value == doctest::Approx(expected).epsilon(1e-11));
  CHECK(expected == doctest::Approx(10.008331944775053).epsilon(1e-14));
}

TEST_CASE("series: halving is exactly a post-subtraction of term(0)/2") {
  SeriesSpec spec;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.2, 0.9);
  for (int it = 0; it < 10; ++it) {
    const double ratio = u(rng);
    const double first = u(rng) * 10.0 - 5.0;
    auto term = [=](long l) { return first * std::pow(ratio, static_cast<double>(l)); };
    const SeriesResult full = sum_series(term, spec, false);
    const SeriesResult halved = sum_series(term, spec, true);
    CHECK(halved.value == full.value - 0.5 * term(0));  // bitwise
    CHECK(halved.terms_used == full.terms_used);
  }
}

TEST_CASE("series: non-convergence and validation") {
  SeriesSpec spec;
  spec.max_terms = 100;
  auto harmonic = [](long l) { return 1.0 / static_cast<double>(l + 1); };
  CHECK_THROWS_AS(sum_series(harmonic, spec, false), NonConvergence);

  SeriesSpec bad;
  bad.max_terms = 2;
  CHECK_THROWS_AS(sum_series(harmonic, bad, false), ValidationError);
  bad = SeriesSpec{};
  bad.relative_tail_tolerance = 1e-3;  // outside (0, 1e-6]
  CHECK_THROWS_AS(sum_series(harmonic, bad, false), ValidationError);
}

TEST_CASE("derivative: quadratics are exact, smooth functions near machine") {
  auto sq = [](double x) { return x * x; };
  const DerivativeResult d = derivative(sq, 3.0, 0.5);
  CHECK(d.value == 6.0);  // central differences annihilate even error terms

  auto c = [](double) { return 4.25; };
  CHECK(derivative(c, 1.0, 0.1).value == 0.0);

  auto e = [](double x) { return std::exp(x); };
  CHECK(derivative(e, 0.0, 0.01).value == doctest::Approx(1.0).epsilon(1e-8));

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int it = 0; it < 20; ++it) {
    const double a = u(rng), b = u(rng), cc = u(rng), x = u(rng);
    auto quad = [=](double t) { return a * t * t + b * t + cc; };
    const double expect = 2.0 * a * x + b;
    CHECK(derivative(quad, x, 0.25).value ==
          doctest::Approx(expect).epsilon(1e-12).scale(std::abs(expect) + 1.0));
  }
}

TEST_CASE("derivative: degenerate step and reporting") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(derivative(f, 1.0, 1e-200), DegenerateStep);
  CHECK_THROWS_AS(derivative(f, 1.0, 0.0), ValidationError);
  const DerivativeResult d = derivative(f, 0.0, 0.2);
  CHECK(d.step_used == doctest::Approx(0.1));
}
