#include "casimir/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "casimir/error.hpp"

namespace casimir {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Signed Euler-Maclaurin term carrying G^(n)(0), n odd, n <= 11.
double em_term(const Eigen::VectorXd& coeffs, int n) {
  const int k = (n + 1) / 2;
  const Rational w = k <= 5 ? kEulerMaclaurinWeights[k - 1] : kEulerMaclaurinRemainderWeight;
  const double derivative = factorial(n) * coeffs[n];
  const double sign = (k % 2 == 1) ? -1.0 : 1.0;
  return sign * static_cast<double>(w.numerator) * derivative / static_cast<double>(w.denominator);
}

void require_coeffs(const Eigen::VectorXd& coeffs, int highest) {
  if (coeffs.size() <= highest) {
    throw DomainError("em_difference: Maclaurin coefficients needed through order " +
                      std::to_string(highest));
  }
}

struct LeastSquares {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  double residual_rms = 0.0;
  double condition = 0.0;
};

LeastSquares solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& values) {
  const Eigen::Index n = design.rows();
  const Eigen::Index m = design.cols();
  const Eigen::VectorXd norms = design.colwise().norm().transpose();
  if ((norms.array() == 0).any() || !norms.allFinite()) {
    throw NumericError("fit: design matrix has a zero or non-finite column");
  }
  const Eigen::MatrixXd scaled = design * norms.cwiseInverse().asDiagonal();

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double condition = sigma(m - 1) > 0 ? sigma(0) / sigma(m - 1)
                                            : std::numeric_limits<double>::infinity();
  if (condition > kMaxFitCondition) {
    throw NumericError("fit: ill-conditioned design matrix (condition " +
                       std::to_string(condition) +
                       "); drop or rescale powers so that the columns are distinguishable");
  }

  const Eigen::VectorXd scaled_coeffs = svd.solve(values);
  const Eigen::VectorXd residual = values - scaled * scaled_coeffs;
  const double rss = residual.squaredNorm();

  const double dof = static_cast<double>(n - m);
  const double variance = dof > 0 ? rss / dof : 0.0;
  const Eigen::MatrixXd v_over_s = svd.matrixV() * sigma.cwiseInverse().asDiagonal();
  const Eigen::VectorXd cov_diag = v_over_s.rowwise().squaredNorm() * variance;

  LeastSquares out;
  out.coefficients = scaled_coeffs.cwiseQuotient(norms);
  out.std_errors = cov_diag.cwiseSqrt().cwiseQuotient(norms);
  out.residual_rms = std::sqrt(rss / static_cast<double>(n));
  out.condition = condition;
  return out;
}

void check_powers(std::span<const int> powers) {
  if (powers.empty()) throw DomainError("fit: at least one power required");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] < 0) throw DomainError("fit: powers must be >= 0");
    if (i > 0 && powers[i] <= powers[i - 1]) {
      throw DomainError("fit: powers must be strictly increasing");
    }
  }
}

void check_distinct(std::span<const Sample> samples) {
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) {
    if (!std::isfinite(s.x) || !std::isfinite(s.value)) throw DomainError("fit: non-finite sample");
    xs.push_back(s.x);
  }
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw DomainError("fit: sample abscissae must be distinct");
  }
}

AsymptoticSeries fit_columns(std::span<const Sample> samples, std::span<const int> powers,
                             bool inverse, std::size_t extra_samples = 2) {
  check_powers(powers);
  if (samples.size() < powers.size() + extra_samples) {
    throw DomainError("fit: need at least len(powers) + " + std::to_string(extra_samples) +
                      " samples");
  }
  check_distinct(samples);

  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto m = static_cast<Eigen::Index>(powers.size());
  Eigen::MatrixXd design(n, m);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = samples[static_cast<std::size_t>(i)].x;
    values(i) = samples[static_cast<std::size_t>(i)].value;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double p = powers[static_cast<std::size_t>(k)];
      design(i, k) = inverse ? std::pow(x, -p) : std::pow(x, p);
    }
  }
  const auto ls = solve_least_squares(design, values);

  AsymptoticSeries series;
  for (Eigen::Index k = 0; k < m; ++k) {
    series.terms.push_back({powers[static_cast<std::size_t>(k)], ls.coefficients(k), ls.std_errors(k)});
  }
  series.residual_rms = ls.residual_rms;
  series.condition = ls.condition;
  return series;
}

struct LineFit {
  double intercept;
  double slope;
  double residual_rms;
};

LineFit fit_line(const std::vector<Sample>& points) {
  std::vector<int> powers{0, 1};
  const auto series = fit_columns(points, powers, /*inverse=*/false, /*extra_samples=*/1);
  return {series.terms[0].coefficient, series.terms[1].coefficient, series.residual_rms};
}

std::vector<Sample> log_magnitudes(std::span<const Sample> samples, std::size_t min_count,
                                   bool log_abscissa) {
  if (samples.size() < min_count) {
    throw DomainError("fit: need at least " + std::to_string(min_count) + " samples");
  }
  const bool positive = samples.front().value > 0;
  std::vector<Sample> points;
  points.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.value == 0 || !std::isfinite(s.value)) {
      throw DomainError("fit: deltas must be nonzero and finite");
    }
    if ((s.value > 0) != positive) {
      throw NumericError(
          "fit: deltas alternate in sign (oscillatory modulation); sample at a fixed phase of "
          "the modulation");
    }
    if (log_abscissa && !(s.x > 0)) throw DomainError("fit: power law needs x > 0");
    points.push_back({log_abscissa ? std::log(s.x) : s.x, std::log(std::abs(s.value))});
  }
  return points;
}

}  // namespace

EulerMaclaurinEstimate em_difference(const Eigen::VectorXd& coeffs, int order) {
  if (order > kMaxEulerMaclaurinOrder) {
    throw UnsupportedError("em_difference: orders above 9 are not supported");
  }
  if (order < 0) throw DomainError("em_difference: order must be >= 0");
  const int next = (order % 2 == 0) ? order + 1 : order + 2;
  require_coeffs(coeffs, next);

  double value = coeffs[0] / 2;
  for (int n = 1; n <= order; n += 2) value += em_term(coeffs, n);
  return {value, std::abs(em_term(coeffs, next)), order};
}

EulerMaclaurinEstimate em_difference(const Eigen::VectorXd& coeffs) {
  require_coeffs(coeffs, kMaxEulerMaclaurinOrder + 2);
  double value = coeffs[0] / 2;
  double last = std::numeric_limits<double>::infinity();
  int order = 0;
  for (int n = 1; n <= kMaxEulerMaclaurinOrder + 2; n += 2) {
    const double term = em_term(coeffs, n);
    if (term == 0) continue;
    if (n > kMaxEulerMaclaurinOrder || std::abs(term) > last) {
      return {value, std::abs(term), order};
    }
    value += term;
    last = std::abs(term);
    order = n;
  }
  return {value, 0.0, kMaxEulerMaclaurinOrder};
}

double AsymptoticSeries::coefficient(int power) const {
  for (const auto& t : terms) {
    if (t.power == power) return t.coefficient;
  }
  throw DomainError("AsymptoticSeries: power " + std::to_string(power) + " not in series");
}

double AsymptoticSeries::evaluate(double x) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coefficient * std::pow(x, -t.power);
  return v;
}

AsymptoticSeries fit_series(std::span<const Sample> samples, std::span<const int> powers) {
  for (const auto& s : samples) {
    if (!(s.x > 0)) throw DomainError("fit_series: x must be > 0");
  }
  if (!samples.empty()) {
    const auto [lo, hi] = std::minmax_element(
        samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.x < b.x; });
    if (hi->x < 10 * lo->x * (1 - 1e-12)) {
      throw DomainError("fit_series: sample x must span at least one decade");
    }
  }
  return fit_columns(samples, powers, /*inverse=*/true);
}

AsymptoticSeries fit_polynomial(std::span<const Sample> samples, std::span<const int> powers) {
  return fit_columns(samples, powers, /*inverse=*/false);
}

DecayFit fit_decay(std::span<const Sample> samples) {
  const auto line = fit_line(log_magnitudes(samples, 4, /*log_abscissa=*/false));
  if (!(line.slope < 0)) throw NumericError("fit_decay: samples do not decay");
  return {-line.slope, line.intercept, line.residual_rms};
}

PowerLawFit fit_power_law(std::span<const Sample> samples) {
  const auto line = fit_line(log_magnitudes(samples, 3, /*log_abscissa=*/true));
  return {-line.slope, line.intercept, line.residual_rms};
}

}  // namespace casimir
