#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "casimir/cutoffs.hpp"
#include "casimir/modesum.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// int_0^inf y^n / (e^{2 pi y} - 1) dy by quadrature, 1 <= n <= 9.
/// Equals n! zeta(n+1) / (2 pi)^(n+1).
double bose_integral(int n);

/// n! zeta(n+1) / (2 pi)^(n+1) from tabulated even zeta values (n odd) or a
/// direct zeta series (n even); the reference for bose_integral.
double bose_integral_closed_form(int n);

/// Reduced pressure with the IR cutoff k_c = alpha / d and no UV cutoff:
/// P(alpha) = -pi^2/240 + alpha^2/8 - alpha^3/(4 pi).
PressureResult ir_truncated_pressure(double alpha);

struct AbelPlanaOptions {
  double y_max = 60.0;
  QuadOptions<double> quad{1e-16, 1e-13, 4000};
};

namespace detail {

/// Im[g(j + i y)] / (e^{2 pi y} - 1), finite at y -> 0 via a complex-step
/// derivative.
template <typename G>
double abel_plana_kernel(G& g, double j, double y) {
  constexpr double two_pi = 2 * std::numbers::pi;
  if (y < 1e-8) {
    constexpr double h = 1e-8;
    const double slope = std::imag(g(std::complex<double>(j, h))) / h;
    const double ratio = y > 0 ? y / std::expm1(two_pi * y) : 1 / two_pi;
    return slope * ratio;
  }
  return std::imag(g(std::complex<double>(j, y))) / std::expm1(two_pi * y);
}

inline std::vector<double> abel_plana_breakpoints(double y_max) {
  std::vector<double> bp;
  for (double y : {0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 40.0}) {
    if (y < y_max) bp.push_back(y);
  }
  bp.push_back(y_max);
  return bp;
}

}  // namespace detail

/// sum_{j=j1}^{j2} G(j) - int_{j1}^{j2} G(j) dj
///   = G(j1)/2 + G(j2)/2 + 2 int_0^inf Im[G(j2 + iy) - G(j1 + iy)] / (e^{2 pi y} - 1) dy.
/// j2 = +inf drops the G(j2) terms. G must accept std::complex<double> and be
/// analytic in the strip; the sum runs over j1, j1 + 1, ...
template <typename G>
QuadResult<double> abel_plana_difference(G&& g, double j1, double j2,
                                         const AbelPlanaOptions& opts = {}) {
  if (!(j2 > j1)) throw DomainError("abel_plana_difference: need j2 > j1");
  const bool infinite = std::isinf(j2);
  auto integrand = [&](double y) {
    double v = -detail::abel_plana_kernel(g, j1, y);
    if (!infinite) v += detail::abel_plana_kernel(g, j2, y);
    if (std::isnan(v)) throw NumericError("abel_plana_difference: G evaluated to NaN");
    return v;
  };
  const auto bp = detail::abel_plana_breakpoints(opts.y_max);
  auto quad = integrate<double>(integrand, std::span<const double>(bp), opts.quad);

  double endpoints = std::real(g(std::complex<double>(j1, 0.0))) / 2;
  if (!infinite) endpoints += std::real(g(std::complex<double>(j2, 0.0))) / 2;
  if (std::isnan(endpoints)) throw NumericError("abel_plana_difference: G evaluated to NaN");
  quad.value = endpoints + 2 * quad.value;
  quad.abs_error = 2 * quad.abs_error + std::numeric_limits<double>::epsilon() * std::abs(endpoints);
  return quad;
}

/// G(j) = j^3 f(pi j / x) continued to complex j, for the families with an
/// entire continuation (Exponential, PowerExponential, None).
std::complex<double> complex_summand(const CutoffSpec& spec, std::complex<double> j,
                                     const ReducedParams& params);

/// Reduced pressure -(pi^2/2)(sum - int) from the Abel-Plana formula with
/// j1 = kappa, j2 = inf, for Exponential, PowerExponential(1) and None.
/// Throws UnsupportedError for PowerExponential(p > 1), whose continuation
/// grows too fast off the real axis, and for TanhHard (see tanh_pressure).
PressureResult abel_plana_pressure(const CutoffSpec& spec, const ReducedParams& params,
                                   const AbelPlanaOptions& opts = {});

/// Tanh hard-cutoff pressure (kappa = 0) from the Abel-Plana integral
///   P = -pi^2 int dy/(e^{2 pi y} - 1) (y^3/2) (1 + (1 - E^2)/(1 + 2E cos(2 pi y/nu) + E^2)),
/// E = e^{-2x/nu}.
PressureResult tanh_pressure(const ReducedParams& params);

/// P + pi^2/240 for the tanh cutoff, evaluated directly (not by subtraction)
/// so that corrections far below the pressure's rounding stay resolved.
PressureResult tanh_pressure_correction(const ReducedParams& params);

struct RootWindow {
  double alpha_low = 0.0;
  double alpha_high = 0.0;
  double bracket_tol = 0.0;
};

/// Roots of ir_truncated_pressure on (0, 3): sign scan, then bisection.
RootWindow find_repulsive_window(double tol);

struct ShiftFactor {
  double exact = 0.0;
  double series = 0.0;
};

/// Factor multiplying -pi^2/240 when d -> d +/- alpha/Lambda:
/// exact (1 +/- alpha/x)^-4 and its binomial series to the given order (<= 3).
ShiftFactor shifted_distance_factor(double alpha_shift, double x, int sign, int order);

}  // namespace casimir
