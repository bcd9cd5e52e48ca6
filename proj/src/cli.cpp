#include "casimir/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

#include "casimir/abelplana.hpp"
#include "casimir/asymptotics.hpp"
#include "casimir/error.hpp"
#include "casimir/report.hpp"
#include "casimir/verify.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi2 = kPi * kPi / 2;

const std::vector<std::string> kCutoffNames{"exp", "exp4", "tanh", "none"};
const std::vector<std::string> kMethodNames{"direct", "em", "abel-plana", "closed"};

PressureResult closed_exponential(const ReducedParams& params) {
  const long double k = params.kappa();
  const auto sum = closed_sum_exponential<long double>(params, k);
  const auto integral = integral_modes<long double>(cutoff::Exponential{}, params, k);
  const long double diff = sum.value - integral.value;
  const long double error = sum.abs_error + integral.abs_error;
  return {static_cast<double>(-kHalfPi2 * diff), PressureMethod::closed_form, static_cast<double>(kHalfPi2 * error)};
}

PressureResult euler_maclaurin(const CutoffSpec& spec, const ReducedParams& params) {
  if (params.kappa() != 0) {
    throw UnsupportedError("method em expands about j = 0 and requires kappa = 0");
  }
  const auto em = em_difference(maclaurin_coeffs(spec, params, kMaxMaclaurinOrder));
  return {-kHalfPi2 * em.value, PressureMethod::euler_maclaurin, kHalfPi2 * em.error_bound};
}

std::string_view auto_method(const CutoffSpec& spec) {
  if (std::holds_alternative<cutoff::TanhHard>(spec)) return "abel-plana";
  if (std::holds_alternative<cutoff::None>(spec)) return "closed";
  return "direct";
}

// Rejects cutoff/method pairs that have no evaluation for any parameters.
void check_combination(const CutoffSpec& spec, std::string_view method) {
  const bool is_none = std::holds_alternative<cutoff::None>(spec);
  const bool is_exp = std::holds_alternative<cutoff::Exponential>(spec);
  const bool is_tanh = std::holds_alternative<cutoff::TanhHard>(spec);
  const std::string name{to_string(spec)};
  if (method == "direct" && is_none) throw UnsupportedError("the sum without cutoff diverges; use --method closed");
  if (method == "em" && (is_none || is_tanh)) throw UnsupportedError("method em needs an analytic cutoff (exp, exp4)");
  if (method == "abel-plana" && !(is_exp || is_none || is_tanh)) {
    throw UnsupportedError("method abel-plana does not apply to cutoff " + name +
                           ": its continuation grows too fast off the real axis");
  }
  if (method == "closed" && !(is_exp || is_none)) {
    throw UnsupportedError("method closed exists only for cutoffs exp and none");
  }
}

struct Point {
  std::optional<PressureResult> result;
  std::string error_code;
};

Point evaluate_point(const CutoffSpec& spec, std::string_view method, double x, double kappa, double nu) {
  try {
    return {compute_pressure(spec, method, ReducedParams(x, kappa, nu)), ""};
  } catch (const ConvergenceError&) {
    return {std::nullopt, "convergence"};
  } catch (const NumericError&) {
    return {std::nullopt, "numeric"};
  } catch (const UnsupportedError&) {
    return {std::nullopt, "unsupported"};
  } catch (const DomainError&) {
    return {std::nullopt, "domain"};
  }
}

// Physical parameters shared by `pressure` and `sweep`.
struct ParamOptions {
  std::string cutoff = "exp";
  double x = 50.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double nu = 1.0;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--cutoff", cutoff, "cutoff family")->check(CLI::IsMember(kCutoffNames))->capture_default_str();
    cmd.add_option("--x", x, "UV scale x = d Lambda")->capture_default_str();
    kappa_opt = cmd.add_option("--kappa", kappa, "IR truncation kappa = d k_c / pi")->capture_default_str();
    alpha_opt = cmd.add_option("--alpha", alpha, "IR truncation alpha = k_c d = pi kappa");
    cmd.add_option("--nu", nu, "tanh smoothing width nu = d mu")->capture_default_str();
  }

  // --alpha and --kappa describe the same quantity: the later one wins.
  double resolved_kappa(const CLI::App& cmd, std::ostream& err) const {
    const auto& order = cmd.parse_order();
    const auto last_kappa = std::find(order.rbegin(), order.rend(), kappa_opt);
    const auto last_alpha = std::find(order.rbegin(), order.rend(), alpha_opt);
    const bool has_kappa = last_kappa != order.rend();
    const bool has_alpha = last_alpha != order.rend();
    if (has_kappa && has_alpha) {
      err << "warning: both --kappa and --alpha given; using the last one ("
          << (last_alpha < last_kappa ? "--alpha" : "--kappa") << ")\n";
    }
    if (has_alpha && (!has_kappa || last_alpha < last_kappa)) return alpha / kPi;
    return kappa;
  }
};

int cmd_pressure(const ParamOptions& p, double kappa, const std::string& method, const std::string& format,
                 std::ostream& out) {
  const CutoffSpec spec = parse_cutoff(p.cutoff);
  const ReducedParams params(p.x, kappa, p.nu);
  const auto r = compute_pressure(spec, method, params);
  const std::vector<std::pair<std::string, std::string>> fields{
      {"cutoff", p.cutoff},
      {"x", format_value(params.x())},
      {"kappa", format_value(params.kappa())},
      {"alpha", format_value(params.alpha())},
      {"nu", format_value(params.nu())},
      {"method", std::string(to_string(r.method))},
      {"reduced_pressure", format_value(r.reduced_pressure)},
      {"abs_error", format_value(r.abs_error)},
  };
  if (format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
    out << '\n';
  } else {
    for (const auto& [k, v] : fields) {
      out << k << std::string(18 - k.size(), ' ') << v << '\n';
    }
  }
  return kExitOk;
}

int cmd_fig2(double alpha_max, int points, const std::string& out_csv, const std::string& out_svg,
             std::ostream& out) {
  const auto curve = ir_pressure_curve(alpha_max, points);
  write_file_atomic(out_csv, curve_csv(curve));
  out << "wrote " << curve.size() << " rows to " << out_csv << '\n';
  if (!out_svg.empty()) {
    write_file_atomic(out_svg, curve_svg(curve));
    out << "wrote chart to " << out_svg << '\n';
  }
  return kExitOk;
}

struct SweepSpec {
  std::string variable = "x";
  double start = 0.0;
  double stop = 0.0;
  int points = 20;
  std::string scale = "linear";
};

int cmd_sweep(const SweepSpec& grid, const ParamOptions& p, double kappa, const std::string& method,
              const std::string& out_csv, unsigned threads, std::ostream& out, std::ostream& err) {
  if (!(grid.start < grid.stop)) throw DomainError("sweep: --start must be < --stop");
  if (grid.points < 2) throw DomainError("sweep: --points must be >= 2");
  if (grid.scale == "log" && !(grid.start > 0)) throw DomainError("sweep: log scale requires --start > 0");
  const CutoffSpec spec = parse_cutoff(p.cutoff);
  const std::string resolved = method == "auto" ? std::string(auto_method(spec)) : method;
  check_combination(spec, resolved);

  const auto n = static_cast<std::size_t>(grid.points);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = grid.scale == "log" ? grid.start * std::pow(grid.stop / grid.start, u)
                                    : grid.start + (grid.stop - grid.start) * u;
  }
  values.back() = grid.stop;

  std::vector<Point> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      double x = p.x;
      double k = kappa;
      double nu = p.nu;
      if (grid.variable == "x") x = values[i];
      if (grid.variable == "alpha") k = values[i] / kPi;
      if (grid.variable == "nu") nu = values[i];
      results[i] = evaluate_point(spec, resolved, x, k, nu);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "variable,value,reduced_pressure,abs_error,error_code\n";
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    csv += grid.variable + "," + format_value(values[i]) + ",";
    if (results[i].result) {
      csv += format_value(results[i].result->reduced_pressure) + "," + format_value(results[i].result->abs_error) + ",";
    } else {
      csv += ",," + results[i].error_code;
      ++failures;
    }
    csv += '\n';
  }
  write_file_atomic(out_csv, csv);
  out << "wrote " << n << " rows to " << out_csv << '\n';
  if (failures) {
    err << "error: " << failures << " of " << n << " points failed; see the error_code column\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite_name, std::ostream& out) {
  const auto suite = parse_suite(suite_name);
  if (!suite) throw DomainError("unknown suite '" + suite_name + "'");
  int failed = 0;
  for (int c : suite_criteria(*suite)) {
    const auto report = run_criterion(c);
    print_report(report, out);
    if (!report.passed()) ++failed;
  }
  out << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria passed")) << '\n';
  return failed ? kExitNumeric : kExitOk;
}

}  // namespace

CutoffSpec parse_cutoff(std::string_view name) {
  if (name == "exp") return cutoff::Exponential{};
  if (name == "exp4") return cutoff::PowerExponential(4);
  if (name == "tanh") return cutoff::TanhHard{};
  if (name == "none") return cutoff::None{};
  throw DomainError("unknown cutoff '" + std::string(name) + "' (expected exp, exp4, tanh or none)");
}

PressureResult compute_pressure(const CutoffSpec& spec, std::string_view method, const ReducedParams& params) {
  if (method == "auto") method = auto_method(spec);
  if (std::find(kMethodNames.begin(), kMethodNames.end(), method) == kMethodNames.end()) {
    throw DomainError("unknown method '" + std::string(method) + "'");
  }
  check_combination(spec, method);
  const bool is_none = std::holds_alternative<cutoff::None>(spec);
  const bool is_tanh = std::holds_alternative<cutoff::TanhHard>(spec);

  if (method == "direct") return reduced_pressure_direct<long double>(spec, params);
  if (method == "em") return euler_maclaurin(spec, params);
  if (method == "abel-plana") {
    if (!is_tanh) return abel_plana_pressure(spec, params);
    if (params.kappa() != 0) throw UnsupportedError("the tanh Abel-Plana form requires kappa = 0");
    return tanh_pressure(params);
  }
  // closed
  if (is_none) return ir_truncated_pressure(params.alpha());
  return closed_exponential(params);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir pressure between parallel plates under mode cutoffs", "casimir"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  // pressure
  auto* pressure = app.add_subcommand("pressure", "reduced pressure P d^4 for one parameter point");
  ParamOptions pressure_params;
  pressure_params.add_to(*pressure);
  std::string method = "direct";
  std::string format = "text";
  pressure->add_option("--method", method, "evaluation method")
      ->check(CLI::IsMember({"direct", "em", "abel-plana", "closed"}))
      ->capture_default_str();
  pressure->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

  // fig2
  auto* fig2 = app.add_subcommand("fig2", "IR-truncated pressure curve as CSV and optional SVG");
  double alpha_max = kCurveAlphaMax;
  int points = kCurvePoints;
  std::string out_csv = "fig2.csv";
  std::string out_svg;
  fig2->add_option("--alpha-max", alpha_max, "largest alpha")->capture_default_str();
  fig2->add_option("--points", points, "number of rows")->capture_default_str();
  fig2->add_option("--out", out_csv, "CSV output path")->capture_default_str();
  fig2->add_option("--svg", out_svg, "SVG output path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "reduced pressure over a parameter grid");
  SweepSpec grid;
  ParamOptions sweep_params;
  sweep_params.add_to(*sweep);
  std::string sweep_method = "auto";
  std::string sweep_out;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--variable", grid.variable, "swept variable")
      ->check(CLI::IsMember({"x", "alpha", "nu"}))
      ->required();
  sweep->add_option("--start", grid.start, "first grid value")->required();
  sweep->add_option("--stop", grid.stop, "last grid value")->required();
  sweep->add_option("--points", grid.points, "number of grid points")->capture_default_str();
  sweep->add_option("--scale", grid.scale, "grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  sweep->add_option("--method", sweep_method, "evaluation method")
      ->check(CLI::IsMember({"auto", "direct", "em", "abel-plana", "closed"}))
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV output path")->required();
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "run acceptance checks; exit 0 iff all pass");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite to run")
      ->check(CLI::IsMember({"coefficients", "roots", "suppression", "cross-method", "all"}))
      ->capture_default_str();

  // bose
  auto* bose = app.add_subcommand("bose", "int_0^inf y^n / (e^{2 pi y} - 1) dy");
  int bose_n = 3;
  bose->add_option("--n", bose_n, "power n in [1, 9]")->capture_default_str();

  // window
  auto* window = app.add_subcommand("window", "alpha interval where the IR-truncated pressure is repulsive");
  double window_tol = 1e-6;
  window->add_option("--tol", window_tol, "root bracket width")->capture_default_str();

  // shift
  auto* shift = app.add_subcommand("shift", "(1 +- alpha/x)^-4 exactly and as a truncated series");
  double shift_alpha = 0.0;
  double shift_x = 0.0;
  int shift_sign = 1;
  int shift_order = 3;
  shift->add_option("--alpha", shift_alpha, "shift alpha")->required();
  shift->add_option("--x", shift_x, "scale x")->required();
  shift->add_option("--sign", shift_sign, "+1 or -1")->capture_default_str();
  shift->add_option("--order", shift_order, "series order in [0, 3]")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (pressure->parsed()) {
      return cmd_pressure(pressure_params, pressure_params.resolved_kappa(*pressure, err), method, format, out);
    }
    if (fig2->parsed()) return cmd_fig2(alpha_max, points, out_csv, out_svg, out);
    if (sweep->parsed()) {
      return cmd_sweep(grid, sweep_params, sweep_params.resolved_kappa(*sweep, err), sweep_method, sweep_out,
                       threads, out, err);
    }
    if (verify->parsed()) return cmd_verify(suite, out);
    if (bose->parsed()) {
      out << "n            " << bose_n << '\n';
      out << "quadrature   " << format_value(bose_integral(bose_n)) << '\n';
      out << "closed_form  " << format_value(bose_integral_closed_form(bose_n)) << '\n';
      return kExitOk;
    }
    if (window->parsed()) {
      const auto w = find_repulsive_window(window_tol);
      out << "alpha_low    " << format_value(w.alpha_low) << '\n';
      out << "alpha_high   " << format_value(w.alpha_high) << '\n';
      out << "bracket_tol  " << format_value(w.bracket_tol) << '\n';
      return kExitOk;
    }
    if (shift->parsed()) {
      const auto f = shifted_distance_factor(shift_alpha, shift_x, shift_sign, shift_order);
      out << "exact     " << format_value(f.exact) << '\n';
      out << "series    " << format_value(f.series) << '\n';
      out << "residual  " << format_value(f.exact - f.series) << '\n';
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {  // DomainError, UnsupportedError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {  // NumericError, ConvergenceError, IoError
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace casimir
