#include "casimir/abelplana.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double zeta(int s) {
  // zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)
  switch (s) {
    case 2: return kPi * kPi / 6;
    case 4: return std::pow(kPi, 4) / 90;
    case 6: return std::pow(kPi, 6) / 945;
    case 8: return std::pow(kPi, 8) / 9450;
    case 10: return std::pow(kPi, 10) / 93555;
    default: break;
  }
  // Odd s >= 3: partial sum plus Euler-Maclaurin tail.
  constexpr int n = 1000;
  CompensatedSum<double> acc;
  for (int k = n; k >= 1; --k) acc += std::pow(static_cast<double>(k), -s);
  const double nd = n;
  acc += std::pow(nd, 1 - s) / (s - 1) - std::pow(nd, -s) / 2 + s * std::pow(nd, -s - 1) / 12;
  return acc.value();
}

std::complex<double> cube(std::complex<double> z) { return z * z * z; }

}  // namespace

double bose_integral(int n) {
  if (n < 1 || n > 9) throw DomainError("bose_integral: n must lie in [1, 9]");
  auto integrand = [n](double y) {
    if (y < 1e-8) {
      // y^n / (e^{2 pi y} - 1) ~ y^{n-1} / (2 pi) (1 - pi y)
      return std::pow(y, n - 1) * (1 - kPi * y) / (2 * kPi);
    }
    return std::pow(y, n) / std::expm1(2 * kPi * y);
  };
  const auto bp = detail::abel_plana_breakpoints(60.0);
  const auto quad =
      integrate<double>(integrand, std::span<const double>(bp), QuadOptions<double>{0.0, 1e-15, 4000});
  return quad.value;
}

double bose_integral_closed_form(int n) {
  if (n < 1 || n > 9) throw DomainError("bose_integral_closed_form: n must lie in [1, 9]");
  return factorial(n) * zeta(n + 1) / std::pow(2 * kPi, n + 1);
}

PressureResult ir_truncated_pressure(double alpha) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) {
    throw DomainError("ir_truncated_pressure: alpha must be >= 0");
  }
  const double a = -kPi * kPi / 240;
  const double b = alpha * alpha / 8;
  const double c = alpha * alpha * alpha / (4 * kPi);
  return {a + b - c, PressureMethod::closed_form, 4 * kEps * (std::abs(a) + b + c)};
}

std::complex<double> complex_summand(const CutoffSpec& spec, std::complex<double> j,
                                     const ReducedParams& params) {
  const std::complex<double> k = kPi * j / params.x();
  if (std::holds_alternative<cutoff::Exponential>(spec)) return cube(j) * std::exp(-k);
  if (const auto* pe = std::get_if<cutoff::PowerExponential>(&spec)) {
    std::complex<double> kp = 1.0;
    for (int i = 0; i < pe->power; ++i) kp *= k;
    return cube(j) * std::exp(-kp);
  }
  if (std::holds_alternative<cutoff::None>(spec)) return cube(j);
  throw UnsupportedError(
      "complex_summand: the tanh cutoff has poles in the Abel-Plana strip; use tanh_pressure");
}

PressureResult abel_plana_pressure(const CutoffSpec& spec, const ReducedParams& params,
                                   const AbelPlanaOptions& opts) {
  if (const auto* pe = std::get_if<cutoff::PowerExponential>(&spec); pe && pe->power > 1) {
    throw UnsupportedError("abel_plana_pressure: exp(-(pi j/x)^p) with p > 1 grows faster than e^{2 pi |Im j|} in "
                           "the strip; use direct summation");
  }
  auto g = [&](std::complex<double> j) { return complex_summand(spec, j, params); };
  const auto diff = abel_plana_difference(g, params.kappa(), std::numeric_limits<double>::infinity(), opts);
  const double half_pi2 = kPi * kPi / 2;
  return {-half_pi2 * diff.value, PressureMethod::abel_plana, half_pi2 * diff.abs_error};
}

PressureResult tanh_pressure_correction(const ReducedParams& params) {
  const double nu = params.nu();
  const double e = std::exp(-2 * params.x() / nu);
  if (e == 0) return {0.0, PressureMethod::abel_plana, 0.0};

  // (1/2)(1 + (1 - E^2)/D) = 1 - E (cos + E)/D, D = 1 + 2E cos + E^2.
  auto integrand = [&](double y) {
    if (y == 0) return 0.0;
    const double c = std::cos(2 * kPi * y / nu);
    const double d = 1 + 2 * e * c + e * e;
    const double bose = y < 1e-8 ? y * y * (1 - kPi * y) / (2 * kPi) : y * y * y / std::expm1(2 * kPi * y);
    return bose * e * (c + e) / d;
  };

  // Panels no wider than nu/4 while the modulation matters.
  std::vector<double> bp{0.0};
  const double step = std::max(nu / 4, 5.0 / 400);
  for (double y = step; y < 5.0; y += step) bp.push_back(y);
  for (double y : {5.0, 10.0, 20.0, 40.0, 60.0}) {
    if (y > bp.back()) bp.push_back(y);
  }
  const auto quad = integrate<double>(integrand, std::span<const double>(bp),
                                      QuadOptions<double>{1e-300, 1e-13, 20000});
  const double pi2 = kPi * kPi;
  return {pi2 * quad.value, PressureMethod::abel_plana, pi2 * quad.abs_error};
}

PressureResult tanh_pressure(const ReducedParams& params) {
  const double ideal = -kPi * kPi * bose_integral(3);
  const auto correction = tanh_pressure_correction(params);
  return {ideal + correction.reduced_pressure, PressureMethod::abel_plana,
          correction.abs_error + 1e-15 * std::abs(ideal)};
}

RootWindow find_repulsive_window(double tol) {
  if (!(tol > 0)) throw DomainError("find_repulsive_window: tol must be > 0");
  auto p = [](double alpha) { return ir_truncated_pressure(alpha).reduced_pressure; };

  std::vector<std::pair<double, double>> brackets;
  constexpr double step = 0.01;
  double prev = step;
  for (int i = 2; i < 300; ++i) {
    const double alpha = i * step;
    if ((p(prev) < 0) != (p(alpha) < 0)) brackets.emplace_back(prev, alpha);
    prev = alpha;
  }
  if (brackets.size() != 2) {
    throw NumericError("find_repulsive_window: expected two sign changes, found " +
                       std::to_string(brackets.size()));
  }

  auto bisect = [&](double lo, double hi) {
    const bool lo_negative = p(lo) < 0;
    while (hi - lo > tol) {
      const double mid = lo + (hi - lo) / 2;
      if ((p(mid) < 0) == lo_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo + (hi - lo) / 2;
  };
  return {bisect(brackets[0].first, brackets[0].second),
          bisect(brackets[1].first, brackets[1].second), tol};
}

ShiftFactor shifted_distance_factor(double alpha_shift, double x, int sign, int order) {
  if (sign != 1 && sign != -1) throw DomainError("shifted_distance_factor: sign must be +1 or -1");
  if (order < 0 || order > 3) throw DomainError("shifted_distance_factor: order must lie in [0, 3]");
  if (!(x > std::abs(alpha_shift))) {
    throw DomainError("shifted_distance_factor: requires x > |alpha_shift|");
  }
  const double r = sign * alpha_shift / x;
  // (1 + r)^-4 = sum_n C(n+3, 3) (-r)^n
  constexpr std::array<double, 4> binomial{1.0, 4.0, 10.0, 20.0};
  double series = 0.0;
  double power = 1.0;
  for (int n = 0; n <= order; ++n) {
    series += binomial[static_cast<std::size_t>(n)] * power;
    power *= -r;
  }
  const double base = 1 + r;
  return {1 / (base * base * base * base), series};
}

}  // namespace casimir
