#include "casimir/cutoffs.hpp"

#include <cmath>

namespace casimir {

ReducedParams::ReducedParams(double x, double kappa, double nu) : x_(x), kappa_(kappa), nu_(nu) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("ReducedParams: x = d*Lambda must be > 0");
  if (!(kappa >= 0) || !std::isfinite(kappa)) {
    throw DomainError("ReducedParams: kappa = d*k_c/pi must be >= 0");
  }
  if (!(nu > 0) || !std::isfinite(nu)) throw DomainError("ReducedParams: nu = d*mu must be > 0");
}

std::string to_string(const CutoffSpec& spec) {
  struct Visitor {
    std::string operator()(cutoff::Exponential) const { return "exp"; }
    std::string operator()(const cutoff::PowerExponential& c) const {
      return c.power == 1 ? "exp" : "exp" + std::to_string(c.power);
    }
    std::string operator()(cutoff::TanhHard) const { return "tanh"; }
    std::string operator()(cutoff::None) const { return "none"; }
  };
  return std::visit(Visitor{}, spec);
}

Eigen::VectorXd maclaurin_coeffs(const CutoffSpec& spec, const ReducedParams& params, int order) {
  if (order < 0 || order > kMaxMaclaurinOrder) {
    throw DomainError("maclaurin_coeffs: order must lie in [0, 12]");
  }
  int power = 0;
  if (std::holds_alternative<cutoff::Exponential>(spec)) {
    power = 1;
  } else if (const auto* pe = std::get_if<cutoff::PowerExponential>(&spec)) {
    power = pe->power;
  } else {
    throw UnsupportedError("maclaurin_coeffs: no Maclaurin data for " + to_string(spec) +
                           " cutoff");
  }

  // exp(-(t j)^p) = sum_m (-1)^m t^{pm} j^{pm} / m!, shifted by j^3.
  const double t = std::numbers::pi / params.x();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(order + 1);
  double term = 1.0;  // (-1)^m t^{pm} / m!
  for (int m = 0; 3 + power * m <= order; ++m) {
    if (m > 0) term *= -std::pow(t, power) / m;
    c[3 + power * m] = term;
  }
  return c;
}

}  // namespace casimir
