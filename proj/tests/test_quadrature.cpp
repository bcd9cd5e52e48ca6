#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "casimir/quadrature.hpp"

using namespace casimir;

TEST_CASE("a single Kronrod panel is exact for degree-22 polynomials") {
  auto f = [](double x) { return std::pow(x, 22); };
  const auto panel = detail::gauss_kronrod_15<double>(f, 0.0, 1.0);
  CHECK(panel.value == doctest::Approx(1.0 / 23.0).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on smooth integrands") {
  const auto sine = integrate<double>([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sine.abs_error <= 1e-12 * 2.0);

  // Needs subdivision: sharp peak.
  const auto peak = integrate<double>([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
  const double exact = 2.0 * std::atan(1.0 / 1e-2) / 1e-2;
  CHECK(peak.value == doctest::Approx(exact).epsilon(1e-12));
  CHECK(peak.intervals > 1);
}

TEST_CASE("long double quadrature reaches extended precision") {
  QuadOptions<long double> opts;
  opts.rel_tol = 1e-18L;
  const auto r = integrate<long double>([](long double x) { return std::exp(x); }, 0.0L, 1.0L, opts);
  CHECK(std::abs(r.value - (std::exp(1.0L) - 1.0L)) < 1e-18L);
}

TEST_CASE("a tolerance below the roundoff floor returns the floor-limited result") {
  QuadOptions<double> opts;
  opts.rel_tol = 1e-18;
  const auto r = integrate<double>([](double x) { return std::cos(x); }, 0.0, 20.0, opts);
  CHECK(r.value == doctest::Approx(std::sin(20.0)).epsilon(1e-13));
  CHECK(r.abs_error > 0.0);
  CHECK(r.abs_error < 1e-12);
}

TEST_CASE("breakpoints split the domain") {
  const std::array<double, 4> bp{0.0, 1.0, 2.0, 3.0};
  const auto r = integrate<double>([](double x) { return std::abs(x - 1.0); }, std::span<const double>(bp));
  CHECK(r.value == doctest::Approx(0.5 + 2.0).epsilon(1e-14));
}

TEST_CASE("quadrature errors") {
  const std::array<double, 1> one{0.0};
  CHECK_THROWS_AS(integrate<double>([](double) { return 1.0; }, std::span<const double>(one)),
                  DomainError);
  CHECK_THROWS_AS(integrate<double>([](double) { return 1.0; }, 1.0, 0.0), DomainError);

  QuadOptions<double> tight{0.0, 1e-14, 3};
  CHECK_THROWS_AS(integrate<double>([](double x) { return std::sin(200 * x); }, 0.0, 10.0, tight),
                  ConvergenceError);

  CHECK_THROWS_AS(integrate<double>([](double) { return std::nan(""); }, 0.0, 1.0), NumericError);
}
