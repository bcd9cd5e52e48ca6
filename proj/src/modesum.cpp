#include "casimir/modesum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace casimir {

std::string_view to_string(SumMethod method) {
  switch (method) {
    case SumMethod::direct: return "direct";
    case SumMethod::closed_form: return "closed_form";
    case SumMethod::quadrature: return "quadrature";
  }
  return "?";
}

std::string_view to_string(PressureMethod method) {
  switch (method) {
    case PressureMethod::direct: return "direct";
    case PressureMethod::euler_maclaurin: return "euler_maclaurin";
    case PressureMethod::abel_plana: return "abel_plana";
    case PressureMethod::closed_form: return "closed_form";
  }
  return "?";
}

namespace {

template <typename Scalar>
Scalar summand(const CutoffSpec& spec, Scalar j, const ReducedParams& params) {
  return j * j * j * weight<Scalar>(spec, j, params);
}

}  // namespace

template <typename Scalar>
ModeSumResult<Scalar> sum_modes(const CutoffSpec& spec, const ReducedParams& params,
                                Scalar j_start, const SumOptions<Scalar>& opts) {
  if (!is_decaying(spec)) throw UnsupportedError("sum_modes: the mode sum diverges without a cutoff");
  if (!(j_start >= 0)) throw DomainError("sum_modes: j_start must be >= 0");

  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const bool exponential = std::holds_alternative<cutoff::Exponential>(spec) ||
                           (std::holds_alternative<cutoff::PowerExponential>(spec) &&
                            std::get<cutoff::PowerExponential>(spec).power == 1);
  const Scalar q = std::exp(-std::numbers::pi_v<Scalar> / static_cast<Scalar>(params.x()));
  const Scalar first = opts.start == LatticeStart::integer ? std::ceil(j_start) : j_start;

  CompensatedSum<Scalar> acc;
  Scalar previous = 0;
  for (long n = 0; n < opts.max_terms; ++n) {
    const Scalar j = first + static_cast<Scalar>(n);
    const Scalar term = summand(spec, j, params);
    acc += term;

    Scalar tail = std::numeric_limits<Scalar>::infinity();
    if (term == 0) {
      // j > 0 with an underflowed weight: every later weight underflows too.
      if (j > 0) tail = 0;
    } else if (exponential) {
      // (j+m)^3 q^(j+m) <= j^3 q^j (q e^{3/j})^m
      const Scalar r = q * std::exp(3 / j);
      if (r < 1) tail = term * r / (1 - r);
    } else if (previous > 0) {
      // Term ratios are non-increasing for every decaying family, so the
      // last observed ratio bounds all later ones.
      const Scalar ratio = term / previous;
      if (ratio < 1) tail = 10 * term * ratio / (1 - ratio);
    }
    previous = term;

    const Scalar partial = acc.value();
    if (tail <= opts.rel_tol * std::abs(partial) || (tail == 0)) {
      return {partial, tail + 2 * eps * std::abs(partial), n + 1, SumMethod::direct};
    }
  }
  throw ConvergenceError("sum_modes: tail bound not reached within j_max terms",
                         static_cast<double>(acc.value()));
}

template <typename Scalar>
ModeSumResult<Scalar> closed_sum_exponential(const ReducedParams& params, Scalar j_start) {
  if (params.x() < 1e-3) {
    throw DomainError("closed_sum_exponential: x < 1e-3 overflows exp(pi/x)");
  }
  if (!(j_start >= 0)) throw DomainError("closed_sum_exponential: j_start must be >= 0");
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar t = std::numbers::pi_v<Scalar> / static_cast<Scalar>(params.x());
  const Scalar k = j_start;
  const Scalar q = std::exp(-t);
  const Scalar one_minus_q = -std::expm1(-t);
  const Scalar lead = std::exp(-t * k);  // e^{-k_c / Lambda}

  // Forward differences of (k + n)^3 at n = 0 against sum_n C(n, m) q^n.
  const Scalar g = one_minus_q;
  const Scalar value = lead * (k * k * k / g + (3 * k * k + 3 * k + 1) * q / (g * g) +
                               (6 * k + 6) * q * q / (g * g * g) + 6 * q * q * q / (g * g * g * g));
  return {value, 16 * eps * std::abs(value), 0, SumMethod::closed_form};
}

template <typename Scalar>
ModeSumResult<Scalar> integral_modes(const CutoffSpec& spec, const ReducedParams& params,
                                     Scalar j_start, const QuadOptions<Scalar>& opts) {
  if (!is_decaying(spec)) {
    throw UnsupportedError("integral_modes: the mode integral diverges without a cutoff");
  }
  if (!(j_start >= 0)) throw DomainError("integral_modes: j_start must be >= 0");
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar scale = static_cast<Scalar>(params.x()) / pi;  // j where k = Lambda

  if (std::holds_alternative<cutoff::Exponential>(spec)) {
    const Scalar u = j_start / scale;
    const Scalar s4 = scale * scale * scale * scale;
    const Scalar value = s4 * std::exp(-u) * (6 + 6 * u + 3 * u * u + u * u * u);
    return {value, 16 * eps * std::abs(value), 0, SumMethod::closed_form};
  }

  // Truncate where the weight is below e^{-800}, far under any contribution.
  std::vector<Scalar> marks;
  Scalar upper = 0;
  if (const auto* pe = std::get_if<cutoff::PowerExponential>(&spec)) {
    upper = scale * std::pow(Scalar(800), Scalar(1) / static_cast<Scalar>(pe->power));
    for (Scalar m : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
      marks.push_back(scale * m);
    }
  } else {
    const Scalar width = static_cast<Scalar>(params.nu()) / pi;
    upper = scale + 400 * width;
    for (Scalar m : {-40.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 40.0, 100.0}) {
      marks.push_back(scale + m * width);
    }
    marks.push_back(scale / 2);
  }
  if (j_start >= upper) return {Scalar(0), Scalar(0), 0, SumMethod::quadrature};

  std::vector<Scalar> breakpoints{j_start};
  std::sort(marks.begin(), marks.end());
  for (Scalar m : marks) {
    if (m > j_start && m < upper) breakpoints.push_back(m);
  }
  breakpoints.push_back(upper);

  auto integrand = [&](Scalar j) { return summand(spec, j, params); };
  const auto quad = integrate<Scalar>(integrand, std::span<const Scalar>(breakpoints), opts);
  return {quad.value, quad.abs_error, quad.evaluations, SumMethod::quadrature};
}

template <typename Scalar>
ModeSumResult<Scalar> mode_difference(const CutoffSpec& spec, const ReducedParams& params,
                                      const DirectOptions& opts) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar kappa = static_cast<Scalar>(params.kappa());
  SumOptions<Scalar> sum_opts;
  sum_opts.rel_tol = eps / 16;
  sum_opts.start = opts.start;
  QuadOptions<Scalar> quad_opts;
  quad_opts.rel_tol = 64 * eps;

  const auto sum = sum_modes<Scalar>(spec, params, kappa, sum_opts);
  const auto integral = integral_modes<Scalar>(spec, params, kappa, quad_opts);
  return {sum.value - integral.value, sum.abs_error + integral.abs_error, sum.terms_used,
          SumMethod::direct};
}

template <typename Scalar>
PressureResult reduced_pressure_direct(const CutoffSpec& spec, const ReducedParams& params,
                                       const DirectOptions& opts) {
  const auto diff = mode_difference<Scalar>(spec, params, opts);
  const Scalar half_pi2 = std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar> / 2;
  return {static_cast<double>(-half_pi2 * diff.value), PressureMethod::direct,
          static_cast<double>(half_pi2 * diff.abs_error)};
}

#define CASIMIR_INSTANTIATE(Scalar)                                                              \
  template ModeSumResult<Scalar> sum_modes<Scalar>(const CutoffSpec&, const ReducedParams&,      \
                                                   Scalar, const SumOptions<Scalar>&);           \
  template ModeSumResult<Scalar> closed_sum_exponential<Scalar>(const ReducedParams&, Scalar);   \
  template ModeSumResult<Scalar> integral_modes<Scalar>(const CutoffSpec&, const ReducedParams&, \
                                                        Scalar, const QuadOptions<Scalar>&);     \
  template ModeSumResult<Scalar> mode_difference<Scalar>(const CutoffSpec&,                      \
                                                         const ReducedParams&,                   \
                                                         const DirectOptions&);                  \
  template PressureResult reduced_pressure_direct<Scalar>(const CutoffSpec&,                     \
                                                          const ReducedParams&,                  \
                                                          const DirectOptions&);

CASIMIR_INSTANTIATE(double)
CASIMIR_INSTANTIATE(long double)

#undef CASIMIR_INSTANTIATE

}  // namespace casimir
