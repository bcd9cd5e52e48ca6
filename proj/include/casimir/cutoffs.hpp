#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "casimir/error.hpp"

namespace casimir {

/// Dimensionless problem parameters.
///
///   x     = d * Lambda       (UV scale)
///   kappa = d * k_c / pi     (IR truncation, lower mode index)
///   nu    = d * mu           (tanh smoothing width)
///
/// Pressures derived from these are reduced pressures p * d^4.
class ReducedParams {
 public:
  explicit ReducedParams(double x, double kappa = 0.0, double nu = 1.0);

  /// IR cutoff given as alpha = k_c * d = pi * kappa.
  static ReducedParams from_alpha(double x, double alpha, double nu = 1.0) {
    return ReducedParams(x, alpha / std::numbers::pi, nu);
  }

  double x() const noexcept { return x_; }
  double kappa() const noexcept { return kappa_; }
  double nu() const noexcept { return nu_; }
  double alpha() const noexcept { return std::numbers::pi * kappa_; }

  ReducedParams with_x(double x) const { return ReducedParams(x, kappa_, nu_); }
  ReducedParams with_kappa(double kappa) const { return ReducedParams(x_, kappa, nu_); }
  ReducedParams with_nu(double nu) const { return ReducedParams(x_, kappa_, nu); }

 private:
  double x_;
  double kappa_;
  double nu_;
};

namespace cutoff {

/// f = exp(-k/Lambda).
struct Exponential {};

/// f = exp(-(k/Lambda)^p), p >= 1.
struct PowerExponential {
  explicit PowerExponential(int p) : power(p) {
    if (p < 1) throw DomainError("PowerExponential: power must be >= 1");
  }
  int power;
};

/// f = (1 - tanh((k - Lambda)/mu)) / 2; the width mu enters through
/// ReducedParams::nu.
struct TanhHard {};

/// Formal f = 1, only meaningful for closed-form and Abel-Plana paths.
struct None {};

}  // namespace cutoff

using CutoffSpec =
    std::variant<cutoff::Exponential, cutoff::PowerExponential, cutoff::TanhHard, cutoff::None>;

std::string to_string(const CutoffSpec& spec);

inline bool is_decaying(const CutoffSpec& spec) {
  return !std::holds_alternative<cutoff::None>(spec);
}

/// Mode weight f(pi j / (d Lambda)) at a (possibly fractional) mode index j.
template <typename Scalar>
Scalar weight(const CutoffSpec& spec, Scalar j, const ReducedParams& params) {
  if (j < 0 || std::isnan(static_cast<double>(j))) {
    throw DomainError("weight: mode index must be >= 0");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar k = pi * j / static_cast<Scalar>(params.x());
  struct Visitor {
    Scalar k;
    Scalar j;
    const ReducedParams& params;
    Scalar operator()(cutoff::Exponential) const { return std::exp(-k); }
    Scalar operator()(const cutoff::PowerExponential& c) const {
      return std::exp(-std::pow(k, static_cast<Scalar>(c.power)));
    }
    Scalar operator()(cutoff::TanhHard) const {
      // (1 - tanh z)/2 = 1/(1 + e^{2z}), z = (pi j - x)/nu
      const Scalar pi = std::numbers::pi_v<Scalar>;
      const Scalar z = (pi * j - static_cast<Scalar>(params.x())) / static_cast<Scalar>(params.nu());
      if (z > 0) {
        const Scalar e = std::exp(-2 * z);
        return e / (1 + e);
      }
      return 1 / (1 + std::exp(2 * z));
    }
    Scalar operator()(cutoff::None) const { return Scalar(1); }
  };
  return std::visit(Visitor{k, j, params}, spec);
}

/// Taylor coefficients c_0..c_order of G(j) = j^3 f(pi j / x) about j = 0,
/// from the exact power series of the cutoff. Only the Exponential and
/// PowerExponential families have usable Maclaurin data.
Eigen::VectorXd maclaurin_coeffs(const CutoffSpec& spec, const ReducedParams& params, int order);

inline constexpr int kMaxMaclaurinOrder = 12;

}  // namespace casimir
