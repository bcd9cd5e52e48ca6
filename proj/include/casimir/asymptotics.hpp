#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "casimir/cutoffs.hpp"

namespace casimir {

/// A rational a/b with exact integer parts.
struct Rational {
  std::int64_t numerator;
  std::int64_t denominator;
  constexpr double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// |B_{2k}| / (2k)! for k = 1..5, the Euler-Maclaurin weights of
/// G', G''', G^(5), G^(7), G^(9): 1/12, 1/(30*4!), 1/(42*6!), 1/(30*8!),
/// 5/(66*10!).
inline constexpr std::array<Rational, 5> kEulerMaclaurinWeights = {{
    {1, 12},
    {1, 720},
    {1, 30240},
    {1, 1209600},
    {5, 239500800},
}};

/// |B_12| / 12! = 691 / (2730 * 12!); only used to bound the remainder after G^(9).
inline constexpr Rational kEulerMaclaurinRemainderWeight = {691, 1307674368000};

inline constexpr int kMaxEulerMaclaurinOrder = 9;

struct EulerMaclaurinEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  int order = 0;  // highest derivative included
};

/// sum_{j>=0} G(j) - int_0^inf G from the Maclaurin coefficients of G,
/// assuming G and all its derivatives vanish at infinity:
///   G(0)/2 - G'(0)/12 + G'''(0)/720 - G^(5)(0)/30240 + ...
/// truncated after the derivative of the given (odd) order. The error bound
/// is the magnitude of the first omitted term, which needs c_{order+2}.
EulerMaclaurinEstimate em_difference(const Eigen::VectorXd& coeffs, int order);

/// Same, truncating at the smallest-magnitude nonzero term.
EulerMaclaurinEstimate em_difference(const Eigen::VectorXd& coeffs);

struct SeriesTerm {
  int power = 0;
  double coefficient = 0.0;
  double std_error = 0.0;  // 1-sigma from the fit residual
};

/// value ~ sum_p c_p x^{-p}.
struct AsymptoticSeries {
  std::vector<SeriesTerm> terms;
  double residual_rms = 0.0;
  double condition = 0.0;  // of the column-equilibrated design matrix

  double coefficient(int power) const;
  double evaluate(double x) const;
};

struct Sample {
  double x;
  double value;
};

/// Least-squares fit of value ~ sum_p c_p x^{-p}. Needs at least
/// powers.size() + 2 distinct samples with x spanning a decade.
AsymptoticSeries fit_series(std::span<const Sample> samples, std::span<const int> powers);

/// Least-squares polynomial sum_p c_p t^p in the sample variable t = x.
AsymptoticSeries fit_polynomial(std::span<const Sample> samples, std::span<const int> powers);

/// |delta| ~ exp(log_prefactor - rate * x).
struct DecayFit {
  double rate = 0.0;
  double log_prefactor = 0.0;
  double residual_rms = 0.0;  // in ln|delta|
};

DecayFit fit_decay(std::span<const Sample> samples);

/// |delta| ~ exp(log_prefactor) * x^{-exponent}.
struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double residual_rms = 0.0;  // in ln|delta|
};

PowerLawFit fit_power_law(std::span<const Sample> samples);

inline constexpr double kMaxFitCondition = 1e12;

}  // namespace casimir
