#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/kahan.hpp"

namespace casimir {

template <typename Scalar>
struct QuadOptions {
  Scalar abs_tol = Scalar(0);
  Scalar rel_tol = Scalar(1e-12);
  int max_intervals = 4000;
};

template <typename Scalar>
struct QuadResult {
  Scalar value{0};
  Scalar abs_error{0};
  int intervals = 0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (non-negative half, descending) with
// the Kronrod weights and the embedded 7-point Gauss weights (odd indices).
inline constexpr std::array<long double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<long double, 4> kGaussWeights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename Scalar>
struct Panel {
  Scalar a;
  Scalar b;
  Scalar value;
  Scalar error;
  Scalar floor;  // roundoff floor of the error estimate

  bool roundoff_limited() const { return error <= floor; }
  bool operator<(const Panel& other) const { return error < other.error; }
};

/// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
template <typename Scalar, typename F>
Panel<Scalar> gauss_kronrod_15(F& f, Scalar a, Scalar b) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min();

  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar abs_half = std::abs(half);

  std::array<Scalar, 7> left{};
  std::array<Scalar, 7> right{};
  const Scalar f_center = static_cast<Scalar>(f(center));
  Scalar kronrod = f_center * static_cast<Scalar>(kKronrodWeights[7]);
  Scalar gauss = f_center * static_cast<Scalar>(kGaussWeights[3]);
  Scalar abs_sum = std::abs(kronrod);

  for (int i = 0; i < 7; ++i) {
    const Scalar dx = half * static_cast<Scalar>(kKronrodNodes[i]);
    left[i] = static_cast<Scalar>(f(center - dx));
    right[i] = static_cast<Scalar>(f(center + dx));
    const Scalar wk = static_cast<Scalar>(kKronrodWeights[i]);
    kronrod += wk * (left[i] + right[i]);
    abs_sum += wk * (std::abs(left[i]) + std::abs(right[i]));
    if (i % 2 == 1) {
      gauss += static_cast<Scalar>(kGaussWeights[i / 2]) * (left[i] + right[i]);
    }
  }

  const Scalar mean = kronrod / 2;
  Scalar asc = static_cast<Scalar>(kKronrodWeights[7]) * std::abs(f_center - mean);
  for (int i = 0; i < 7; ++i) {
    asc += static_cast<Scalar>(kKronrodWeights[i]) *
           (std::abs(left[i] - mean) + std::abs(right[i] - mean));
  }

  const Scalar result = kronrod * half;
  const Scalar res_abs = abs_sum * abs_half;
  const Scalar res_asc = asc * abs_half;
  Scalar error = std::abs((kronrod - gauss) * half);
  if (res_asc != 0 && error != 0) {
    error = res_asc * std::min(Scalar(1), std::pow(200 * error / res_asc, Scalar(1.5)));
  }
  Scalar floor = 0;
  if (res_abs > tiny / (50 * eps)) {
    floor = 50 * eps * res_abs;
    error = std::max(floor, error);
  }
  return {a, b, result, error, floor};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature over consecutive panels
/// [b0, b1], [b1, b2], ... The panel with the largest error estimate is
/// bisected until the total estimate meets max(abs_tol, rel_tol*|I|).
///
/// Throws ConvergenceError when max_intervals is exhausted.
template <typename Scalar, typename F>
QuadResult<Scalar> integrate(F&& f, std::span<const Scalar> breakpoints,
                             const QuadOptions<Scalar>& opts = {}) {
  if (breakpoints.size() < 2) {
    throw DomainError("integrate: need at least two breakpoints");
  }
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();

  std::priority_queue<detail::Panel<Scalar>> active;
  // Panels that bisection cannot improve: at their roundoff floor, or too
  // narrow to split.
  std::vector<detail::Panel<Scalar>> frozen;
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw DomainError("integrate: breakpoints must be strictly increasing");
    }
    active.push(detail::gauss_kronrod_15<Scalar>(f, breakpoints[i], breakpoints[i + 1]));
    evaluations += 15;
  }

  auto totals = [&]() {
    CompensatedSum<Scalar> value;
    Scalar error = 0;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    for (const auto& p : frozen) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value.value(), error};
  };

  // Running totals are kept incrementally; totals() is only used at exit so
  // the reported value is accumulated with compensation.
  Scalar value_est = 0;
  Scalar error_est = 0;
  {
    auto [v, e] = totals();
    value_est = v;
    error_est = e;
  }

  int intervals = static_cast<int>(active.size());
  while (!active.empty()) {
    const Scalar tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(value_est));
    if (error_est <= tol) break;
    if (intervals >= opts.max_intervals) {
      throw ConvergenceError("integrate: interval limit reached", static_cast<double>(error_est));
    }
    const auto worst = active.top();
    active.pop();
    const Scalar mid = (worst.a + worst.b) / 2;
    const Scalar scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (worst.roundoff_limited() || worst.b - worst.a <= 100 * eps * scale ||
        !(worst.a < mid && mid < worst.b)) {
      frozen.push_back(worst);
      if (active.empty()) break;
      continue;
    }
    const auto left = detail::gauss_kronrod_15<Scalar>(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15<Scalar>(f, mid, worst.b);
    evaluations += 30;
    ++intervals;
    value_est += left.value + right.value - worst.value;
    error_est += left.error + right.error - worst.error;
    if (!std::isfinite(static_cast<double>(value_est))) {
      throw NumericError("integrate: integrand produced a non-finite value");
    }
    active.push(left);
    active.push(right);
  }

  auto [value, error] = totals();
  if (!std::isfinite(static_cast<double>(value))) {
    throw NumericError("integrate: integrand produced a non-finite value");
  }
  // A request below the roundoff floor is met as well as arithmetic allows;
  // only unresolved narrow panels (a singularity) are an error.
  const Scalar tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
  Scalar unresolved = 0;
  for (const auto& p : frozen) {
    if (!p.roundoff_limited()) unresolved += p.error;
  }
  if (unresolved > tol) {
    throw ConvergenceError("integrate: unresolved singular behaviour", static_cast<double>(error));
  }
  return {value, error, intervals, evaluations};
}

template <typename Scalar, typename F>
QuadResult<Scalar> integrate(F&& f, Scalar a, Scalar b, const QuadOptions<Scalar>& opts = {}) {
  const std::array<Scalar, 2> bp{a, b};
  return integrate<Scalar>(std::forward<F>(f), std::span<const Scalar>(bp), opts);
}

}  // namespace casimir
