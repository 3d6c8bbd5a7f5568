#include <cmath>
#include <limits>

#include "doctest.h"

#include "gepr/errors.hpp"
#include "gepr/quadrature.hpp"
#include "gepr/root_finding.hpp"

using namespace gepr;

namespace {
const double kSqrtPi = std::sqrt(std::acos(-1.0));
}

TEST_CASE("order-2 Hermite rule is the hand-computable one") {
  const auto rule = gauss_hermite(2);
  REQUIRE(rule.order() == 2);
  CHECK(std::abs(rule.nodes()[0] + 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(rule.nodes()[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(rule.weights()[0] - kSqrtPi / 2) < 1e-12);
  CHECK(std::abs(rule.weights()[1] - kSqrtPi / 2) < 1e-12);
}

TEST_CASE("order-3 Hermite rule") {
  const auto rule = gauss_hermite(3);
  CHECK(std::abs(rule.nodes()[1]) < 1e-15);
  CHECK(rule.nodes()[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(rule.weights()[1] == doctest::Approx(2.0 * kSqrtPi / 3).epsilon(1e-14));
  CHECK(rule.weights()[0] == doctest::Approx(kSqrtPi / 6).epsilon(1e-14));
}

TEST_CASE("Hermite order bounds") {
  CHECK_THROWS_AS(gauss_hermite(1), ParameterError);
  CHECK_THROWS_AS(gauss_hermite(1025), ParameterError);
  CHECK_NOTHROW(gauss_hermite(1024));
}

TEST_CASE("Hermite nodes are symmetric and increasing") {
  for (int n : {5, 64, 333, 1024}) {
    const auto rule = gauss_hermite(n);
    const auto x = rule.nodes();
    for (int k = 0; k + 1 < n; ++k) CHECK(x[k] < x[k + 1]);
    for (int k = 0; k < n; ++k) CHECK(std::abs(x[k] + x[n - 1 - k]) < 1e-12 * (1 + std::abs(x[k])));
  }
}

TEST_CASE("Gaussian integrates exactly at every order") {
  for (int n : {2, 7, 64, 361, 512, 1024}) {
    const auto rule = gauss_hermite(n);
    const double v = integrate_1d([](double x) { return std::exp(-x * x); }, rule);
    CHECK(v == doctest::Approx(kSqrtPi).epsilon(1e-13));
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
      CHECK(rule.full_weight(k) > 0.0);
    }
  }
}

TEST_CASE("polynomial moments are exact below degree 2n") {
  const auto rule = gauss_hermite(12);
  for (int k = 0; k < 12; ++k) {
    const double exact = std::tgamma(k + 0.5);
    const double v = integrate_1d([k](double x) { return std::pow(x, 2 * k) * std::exp(-x * x); }, rule);
    CHECK(v == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("Newton polishing agrees with the raw Golub-Welsch rule") {
  for (int n : {20, 100}) {
    const auto raw = golub_welsch_hermite(n);
    const auto rule = gauss_hermite(n);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(raw.nodes[k] - rule.nodes()[k]) < 1e-10 * (1 + std::abs(rule.nodes()[k])));
      CHECK(raw.weights[k] == doctest::Approx(rule.weights()[k]).epsilon(1e-8));
    }
  }
}

TEST_CASE("reframed rule integrates a shifted Gaussian") {
  const double c = 3.5;
  const double s = 0.2;
  const auto rule = gauss_hermite(16).reframed(c, s);
  const double v = integrate_1d([&](double x) { return std::exp(-(x - c) * (x - c) / (2 * s * s)); }, rule);
  CHECK(v == doctest::Approx(s * std::sqrt(2.0) * kSqrtPi).epsilon(1e-13));
  CHECK(rule.center() == c);
  CHECK(rule.scale() == s);
  CHECK_THROWS_AS(rule.reframed(0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(rule.reframed(0.0, -1.0), ParameterError);
}

TEST_CASE("mapped Legendre agrees with Hermite") {
  const auto gh = gauss_hermite(40).reframed(0.3, 1.0);
  const auto gl = gauss_legendre_mapped(400, 0.3, 1.0);
  auto f = [](double x) { return std::exp(-0.5 * (x - 0.3) * (x - 0.3)) * (1.0 + x * x); };
  CHECK(integrate_1d(f, gl) == doctest::Approx(integrate_1d(f, gh)).epsilon(1e-10));
  // algebraic tails, out of reach of a Hermite rule
  const double lorentz = integrate_1d([](double x) { return 1.0 / (1.0 + x * x); },
                                      gauss_legendre_mapped(400));
  CHECK(lorentz == doctest::Approx(std::acos(-1.0)).epsilon(1e-6));
}

TEST_CASE("tensor rule in rotated coordinates equals the direct one") {
  // exp(-(x^2 + y^2) + x y) over R^2 = 2 pi / sqrt(3)
  auto f = [](double x, double y) { return std::exp(-(x * x + y * y) + x * y); };
  const auto rule = gauss_hermite(80);
  const double direct = integrate_2d(f, rule, rule);
  const double rotated = integrate_2d(
      [&](double u, double v) {
        return f((u + v) / std::sqrt(2.0), (v - u) / std::sqrt(2.0));
      },
      rule, rule);
  const double exact = 2.0 * std::acos(-1.0) / std::sqrt(3.0);
  CHECK(direct == doctest::Approx(exact).epsilon(1e-12));
  CHECK(rotated == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("non-finite integrand is reported") {
  const auto rule = gauss_hermite(8);
  CHECK_THROWS_AS(integrate_1d([](double) { return std::numeric_limits<double>::quiet_NaN(); }, rule),
                  NumericalError);
  CHECK_THROWS_AS(
      integrate_2d([](double, double) { return std::numeric_limits<double>::infinity(); }, rule, rule),
      NumericalError);
}

TEST_CASE("convergence loop") {
  const auto ok = converge([](int n) { return 1.0 + std::pow(2.0, -n); });
  CHECK(ok.value == doctest::Approx(1.0));
  CHECK(ok.order_used == 128);
  CHECK(ok.delta < 1e-9);

  try {
    converge([](int n) { return static_cast<double>(n); }, {64, 1e-9, 512});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.previous() == 256.0);
    CHECK(e.last() == 512.0);
    CHECK(e.order() == 512);
  }

  CHECK_THROWS_AS(converge([](int) { return 0.0; }, {8, 1e-9, 1024}), ParameterError);
  CHECK_THROWS_AS(converge([](int) { return 0.0; }, {64, 1e-9, 2048}), ParameterError);
  CHECK_THROWS_AS(converge([](int) { return 0.0; }, {64, 0.0, 1024}), ParameterError);
}

TEST_CASE("relative convergence for large values") {
  const auto r = converge([](int n) { return 1e12 * (1.0 + 1e-12 / n); });
  CHECK(r.order_used == 128);
}

TEST_CASE("bisection") {
  const double root = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK(bisect([](double x) { return x; }, -1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
  CHECK_THROWS_AS(bisect([](double x) { return x; }, 1.0, -1.0), ParameterError);
}
