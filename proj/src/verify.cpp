#include "casimir/verify.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>

#include "casimir/abelplana.hpp"
#include "casimir/asymptotics.hpp"
#include "casimir/modesum.hpp"
#include "casimir/report.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Check within_abs(std::string label, double measured, double expected, double tol) {
  return {std::move(label), num(measured), num(expected) + " ± " + num(tol),
          std::abs(measured - expected) <= tol};
}

Check within_rel(std::string label, double measured, double expected, double tol) {
  return {std::move(label), num(measured), num(expected) + " ± " + num(tol) + " rel",
          std::abs(measured - expected) <= tol * std::abs(expected)};
}

Check at_most(std::string label, double measured, double bound) {
  return {std::move(label), num(measured), "<= " + num(bound), measured <= bound};
}

Check at_least(std::string label, double measured, double bound) {
  return {std::move(label), num(measured), ">= " + num(bound), measured >= bound};
}

Check holds(std::string label, bool ok, std::string measured, std::string expected) {
  return {std::move(label), std::move(measured), std::move(expected), ok};
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> xs;
  for (int i = 0; i < points; ++i) xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  xs.back() = hi;
  return xs;
}

// Sum-minus-integral for the exponential cutoff at kappa = 0, extended precision.
double exponential_difference(double x) {
  return static_cast<double>(mode_difference<long double>(cutoff::Exponential{}, ReducedParams(x)).value);
}

void ideal_limit(CriterionReport& r) {
  r.title = "ideal limit: exponential cutoff approaches -pi^2/240 as x^-2";
  const auto p = reduced_pressure_direct<long double>(cutoff::Exponential{}, ReducedParams(50.0));
  const double expected = kIdealPressure + std::pow(kPi, 4) / (1008 * 2500.0);
  r.checks.push_back(within_abs("P(x=50)", p.reduced_pressure, expected, 2e-8));

  std::vector<Sample> deviations;
  for (double x : {25.0, 50.0, 100.0}) {
    const double dev = reduced_pressure_direct<long double>(cutoff::Exponential{}, ReducedParams(x)).reduced_pressure -
                       kIdealPressure;
    deviations.push_back({x, dev});
  }
  r.checks.push_back(within_abs("power-law exponent of P + pi^2/240, x in {25,50,100}",
                                fit_power_law(deviations).exponent, 2.0, 0.02));
}

void expansion_coefficients(CriterionReport& r) {
  r.title = "expansion coefficients 1/120 and pi^2/504 of sum - integral";
  std::vector<Sample> samples;
  for (double x : log_grid(20.0, 200.0, 16)) samples.push_back({x, exponential_difference(x)});
  const std::vector<int> powers{0, 2, 4, 6};
  const auto fit = fit_series(samples, powers);
  r.checks.push_back(within_rel("x^0 coefficient", fit.coefficient(0), 1.0 / 120, 1e-8));
  r.checks.push_back(within_rel("x^-2 coefficient", -fit.coefficient(2), kPi * kPi / 504, 5e-3));
}

void quartic_coefficient(CriterionReport& r) {
  r.title = "quartic cutoff: x^-4 pressure coefficient pi^6/480";
  // Independent confirmation of 1/480: G^(7)(0) = -5040 t^4 enters the
  // Euler-Maclaurin sum with weight -B_8/8! = 1/1209600, giving -t^4/240;
  // the pressure carries -(pi^2/2) times that.
  const auto& w8 = kEulerMaclaurinWeights[3];
  const bool exact = w8.numerator == 1 && w8.denominator % 5040 == 0 && w8.denominator / 5040 == 240;
  r.checks.push_back(holds("B_8 weight * 7! is 1/240 exactly", exact,
                           std::to_string(w8.numerator) + "/" + std::to_string(w8.denominator), "1/1209600"));
  for (double x : {10.0, 30.0}) {
    const double t = kPi / x;
    const auto coeffs = maclaurin_coeffs(cutoff::PowerExponential(4), ReducedParams(x), 12);
    r.checks.push_back(within_rel("G^(7)(0) at x=" + num(x), 5040 * coeffs[7], -5040 * std::pow(t, 4), 1e-14));
    const double term = em_difference(coeffs, 7).value - em_difference(coeffs, 5).value;
    r.checks.push_back(within_rel("order-7 EM term * x^4 * (-pi^2/2)", -(kPi * kPi / 2) * term * std::pow(x, 4),
                                  std::pow(kPi, 6) / 480, 1e-9));
  }

  std::vector<Sample> samples;
  for (double x : log_grid(20.0, 200.0, 16)) {
    const auto p = reduced_pressure_direct<long double>(cutoff::PowerExponential(4), ReducedParams(x));
    samples.push_back({x, p.reduced_pressure - kIdealPressure});
  }
  const std::vector<int> powers{4, 8};
  r.checks.push_back(
      within_rel("fitted x^-4 coefficient", fit_series(samples, powers).coefficient(4), std::pow(kPi, 6) / 480, 0.02));
}

void repulsive_window(CriterionReport& r) {
  r.title = "repulsive window between alpha = 0.842 and 1.228";
  const auto w = find_repulsive_window(1e-6);
  r.checks.push_back(within_abs("lower root (3 decimals)", std::round(w.alpha_low * 1000) / 1000, 0.842, 1e-12));
  r.checks.push_back(within_abs("upper root (3 decimals)", std::round(w.alpha_high * 1000) / 1000, 1.228, 1e-12));
  for (auto [alpha, repulsive] : {std::pair{1.0, true}, std::pair{0.5, false}, std::pair{1.5, false}}) {
    const double p = ir_truncated_pressure(alpha).reduced_pressure;
    r.checks.push_back(holds("P(" + num(alpha) + ")", repulsive ? p > 0 : p < 0, num(p), repulsive ? "> 0" : "< 0"));
  }
}

void bose_integrals(CriterionReport& r) {
  r.title = "Bose integrals n = 1, 3 by quadrature";
  r.checks.push_back(within_rel("n=1", bose_integral(1), 1.0 / 24, 1e-12));
  r.checks.push_back(within_rel("n=3", bose_integral(3), 1.0 / 240, 1e-12));
}

void cross_method(CriterionReport& r) {
  r.title = "direct, Euler-Maclaurin and Abel-Plana agree for the exponential cutoff";
  for (double x : {5.0, 20.0, 80.0}) {
    const ReducedParams params(x);
    const double direct = exponential_difference(x);
    const auto em = em_difference(maclaurin_coeffs(cutoff::Exponential{}, params, 12));
    const double t = kPi / x;
    const auto ap = abel_plana_difference([t](std::complex<double> j) { return j * j * j * std::exp(-t * j); }, 0.0,
                                          kInf);
    const std::string at = " at x=" + num(x);
    r.checks.push_back(within_abs("direct vs abel-plana" + at, direct, ap.value, 1e-9));
    r.checks.push_back(within_abs("direct vs em" + at, direct, em.value, std::max(1e-9, em.error_bound)));
    r.checks.push_back(within_abs("abel-plana vs em" + at, ap.value, em.value, std::max(1e-9, em.error_bound)));
  }
}

void exponential_suppression(CriterionReport& r) {
  r.title = "tanh cutoff corrections decay as exp(-2x/nu)";
  std::vector<Sample> samples;
  for (int x = 6; x <= 14; ++x) {
    const auto p = tanh_pressure(ReducedParams(x, 0.0, 1.0));
    samples.push_back({static_cast<double>(x), p.reduced_pressure - kIdealPressure});
  }
  const auto decay = fit_decay(samples);
  const auto power = fit_power_law(samples);
  r.checks.push_back(within_abs("decay rate at nu=1", decay.rate, 2.0, 0.1));
  r.checks.push_back(at_least("power-law rms / exponential rms", power.residual_rms / decay.residual_rms, 10.0));
}

void ir_closed_form(CriterionReport& r) {
  r.title = "IR closed form equals the direct sum; kappa^4 term cancels";
  SumOptions<double> tight;
  tight.rel_tol = 1e-18;
  double worst = 0.0;
  for (double x : {1.0, 2.0, 5.0, 13.0, 40.0, 100.0, 200.0}) {
    for (int i = 1; i <= 20; ++i) {
      const double k = 0.05 * i;
      const ReducedParams p(x, k);
      const double closed = closed_sum_exponential<double>(p, k).value;
      const double direct = sum_modes<double>(cutoff::Exponential{}, p, k, tight).value;
      worst = std::max(worst, std::abs(closed - direct) / std::abs(direct));
    }
  }
  r.checks.push_back(at_most("max relative |closed - direct|", worst, 1e-11));

  // x^0 coefficient of sum - integral for each kappa, then its kappa^4 term.
  std::vector<Sample> constant_terms;
  const std::vector<int> x_powers{0, 1, 2, 3, 4};
  for (int i = 1; i <= 20; ++i) {
    const long double k = 0.05L * i;
    std::vector<Sample> samples;
    for (double x : log_grid(20.0, 200.0, 16)) {
      const ReducedParams p(x, static_cast<double>(k));
      const long double diff = closed_sum_exponential<long double>(p, k).value -
                               integral_modes<long double>(cutoff::Exponential{}, p, k).value;
      samples.push_back({x, static_cast<double>(diff)});
    }
    constant_terms.push_back({static_cast<double>(k), fit_series(samples, x_powers).coefficient(0)});
  }
  const std::vector<int> k_powers{0, 1, 2, 3, 4, 5, 6};
  const auto poly = fit_polynomial(constant_terms, k_powers);
  r.checks.push_back(at_most("|kappa^4 coefficient|", std::abs(poly.coefficient(4)), 1e-6));
}

void figure_curve(CriterionReport& r) {
  r.title = "IR-truncated pressure curve: 100 rows over [0, 1.58], sign -/+/-";
  const auto curve = ir_pressure_curve(kCurveAlphaMax, kCurvePoints);
  const std::string csv = curve_csv(curve);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  r.checks.push_back(holds("header", line == "alpha,reduced_pressure", line, "alpha,reduced_pressure"));

  std::vector<std::pair<double, double>> rows;
  bool parsed = true;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    double a = 0;
    double p = 0;
    if (comma == std::string::npos ||
        std::from_chars(line.data(), line.data() + comma, a).ec != std::errc{} ||
        std::from_chars(line.data() + comma + 1, line.data() + line.size(), p).ec != std::errc{}) {
      parsed = false;
      break;
    }
    rows.emplace_back(a, p);
  }
  r.checks.push_back(holds("rows", parsed && rows.size() == 100, std::to_string(rows.size()), "100"));
  if (!parsed || rows.size() != 100) return;
  r.checks.push_back(within_abs("first alpha", rows.front().first, 0.0, 0.0));
  r.checks.push_back(within_abs("last alpha", rows.back().first, 1.58, 5e-7));

  double worst_alpha = 0.0;
  double worst_value = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double alpha = kCurveAlphaMax * i / 99;
    const double exact = ir_truncated_pressure(alpha).reduced_pressure;
    const auto [a, p] = rows[static_cast<std::size_t>(i)];
    worst_alpha = std::max(worst_alpha, std::abs(a - alpha));
    worst_value = std::max(worst_value, std::abs(p - exact) / std::abs(exact));
  }
  r.checks.push_back(at_most("max |alpha - grid| (6 decimals)", worst_alpha, 5e-7));
  r.checks.push_back(at_most("max relative pressure error (9 significant digits)", worst_value, 5e-9));

  const auto w = find_repulsive_window(1e-9);
  std::vector<double> crossings;  // alpha midway between rows of opposite sign
  std::string pattern;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const char s = rows[i].second < 0 ? '-' : '+';
    if (pattern.empty() || pattern.back() != s) pattern += s;
    if (i && (rows[i - 1].second < 0) != (rows[i].second < 0)) {
      const bool brackets = (rows[i - 1].first < w.alpha_low && w.alpha_low < rows[i].first) ||
                            (rows[i - 1].first < w.alpha_high && w.alpha_high < rows[i].first);
      crossings.push_back(brackets ? 1.0 : 0.0);
    }
  }
  r.checks.push_back(holds("sign pattern", pattern == "-+-", pattern, "-+-"));
  const bool bracketed = crossings.size() == 2 && crossings[0] == 1.0 && crossings[1] == 1.0;
  r.checks.push_back(holds("sign changes bracket the window roots", bracketed,
                           std::to_string(crossings.size()) + " crossings", "2, at " + num(w.alpha_low) + " and " +
                                                                                 num(w.alpha_high)));
}

void shifted_series(CriterionReport& r) {
  r.title = "shifted-distance series residual <= 70 (alpha/x)^4";
  constexpr double x = 25.0;
  double worst = 0.0;
  bool zero_exact = true;
  for (int sign : {1, -1}) {
    for (int i = 0; i <= 40; ++i) {
      const double ratio = 0.005 * i;
      const auto f = shifted_distance_factor(ratio * x, x, sign, 3);
      const double residual = std::abs(f.exact - f.series);
      if (i == 0) {
        zero_exact = zero_exact && residual == 0.0;
      } else {
        worst = std::max(worst, residual / (70 * std::pow(ratio, 4)));
      }
    }
  }
  r.checks.push_back(holds("residual at alpha = 0", zero_exact, zero_exact ? "0" : "nonzero", "0"));
  r.checks.push_back(at_most("max residual / (70 (alpha/x)^4)", worst, 1.0));
}

}  // namespace

bool CriterionReport::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "coefficients") return Suite::coefficients;
  if (name == "roots") return Suite::roots;
  if (name == "suppression") return Suite::suppression;
  if (name == "cross-method") return Suite::cross_method;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::coefficients: return "coefficients";
    case Suite::roots: return "roots";
    case Suite::suppression: return "suppression";
    case Suite::cross_method: return "cross-method";
    case Suite::all: return "all";
  }
  return "unknown";
}

std::vector<int> suite_criteria(Suite suite) {
  switch (suite) {
    case Suite::coefficients: return {1, 2, 3};
    case Suite::roots: return {4, 9};
    case Suite::suppression: return {7};
    case Suite::cross_method: return {5, 6, 8, 10};
    case Suite::all: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  return {};
}

CriterionReport run_criterion(int criterion) {
  if (criterion < 1 || criterion > kCriterionCount) {
    throw DomainError("run_criterion: criterion must lie in [1, 10]");
  }
  CriterionReport report;
  report.criterion = criterion;
  try {
    switch (criterion) {
      case 1: ideal_limit(report); break;
      case 2: expansion_coefficients(report); break;
      case 3: quartic_coefficient(report); break;
      case 4: repulsive_window(report); break;
      case 5: bose_integrals(report); break;
      case 6: cross_method(report); break;
      case 7: exponential_suppression(report); break;
      case 8: ir_closed_form(report); break;
      case 9: figure_curve(report); break;
      case 10: shifted_series(report); break;
      default: break;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  return report;
}

std::string summary_line(const CriterionReport& report) {
  std::string line = report.passed() ? "PASS" : "FAIL";
  line += " [" + std::to_string(report.criterion) + "] " + report.title;
  if (!report.error.empty()) line += " (error: " + report.error + ")";
  return line;
}

void print_report(const CriterionReport& report, std::ostream& out) {
  out << summary_line(report) << '\n';
  for (const auto& c : report.checks) {
    out << "    " << (c.passed ? "ok  " : "FAIL") << ' ' << c.label << ": " << c.measured << " (expected "
        << c.expected << ")\n";
  }
}

}  // namespace casimir
