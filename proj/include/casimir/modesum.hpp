#pragma once

#include <string_view>

#include "casimir/cutoffs.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class SumMethod { direct, closed_form, quadrature };
enum class PressureMethod { direct, euler_maclaurin, abel_plana, closed_form };

std::string_view to_string(SumMethod method);
std::string_view to_string(PressureMethod method);

/// Where an IR-truncated mode sum starts. `continuum` sums over the shifted
/// lattice j_start, j_start + 1, ... (the convention of the closed forms);
/// `integer` sums over integers j >= ceil(j_start).
enum class LatticeStart { continuum, integer };

template <typename Scalar>
struct ModeSumResult {
  Scalar value{0};
  Scalar abs_error{0};
  long terms_used = 0;
  SumMethod method = SumMethod::direct;
};

/// Reduced pressure P = p d^4.
struct PressureResult {
  double reduced_pressure = 0.0;
  PressureMethod method = PressureMethod::direct;
  double abs_error = 0.0;
};

template <typename Scalar>
struct SumOptions {
  Scalar rel_tol = Scalar(1e-13);
  LatticeStart start = LatticeStart::continuum;
  long max_terms = 10'000'000;
};

/// Compensated sum of j^3 f(pi j / x) over the lattice starting at j_start.
/// Stops once a rigorous tail bound drops below rel_tol * |partial sum|;
/// abs_error is that bound plus rounding.
template <typename Scalar>
ModeSumResult<Scalar> sum_modes(const CutoffSpec& spec, const ReducedParams& params,
                                Scalar j_start, const SumOptions<Scalar>& opts = {});

/// Closed form of sum_{n>=0} (j0 + n)^3 exp(-pi (j0 + n) / x), j0 = j_start.
template <typename Scalar>
ModeSumResult<Scalar> closed_sum_exponential(const ReducedParams& params, Scalar j_start);

/// Continuum integral of j^3 f(pi j / x) over [j_start, inf).
/// Exact for the exponential cutoff, adaptive quadrature otherwise.
template <typename Scalar>
ModeSumResult<Scalar> integral_modes(const CutoffSpec& spec, const ReducedParams& params,
                                     Scalar j_start, const QuadOptions<Scalar>& opts = {});

struct DirectOptions {
  LatticeStart start = LatticeStart::continuum;
};

/// Sum minus integral, both starting at kappa, evaluated to full working
/// precision of Scalar.
template <typename Scalar>
ModeSumResult<Scalar> mode_difference(const CutoffSpec& spec, const ReducedParams& params,
                                      const DirectOptions& opts = {});

/// P = -(pi^2/2) (sum - integral) with errors propagated from both parts.
template <typename Scalar = double>
PressureResult reduced_pressure_direct(const CutoffSpec& spec, const ReducedParams& params,
                                       const DirectOptions& opts = {});

/// Ideal (cutoff-free, kappa = 0) reduced Casimir pressure -pi^2/240.
inline constexpr double kIdealPressure = -std::numbers::pi * std::numbers::pi / 240.0;

}  // namespace casimir
