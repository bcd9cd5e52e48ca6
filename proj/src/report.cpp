#include "casimir/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

#include <unistd.h>

#include "casimir/abelplana.hpp"
#include "casimir/error.hpp"

namespace casimir {

namespace {

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, fmt, precision);
  if (ec != std::errc{}) throw NumericError("format: value does not fit the buffer");
  std::string s(buf, end);
  // Values that round to zero print without a sign.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string coord(double v) { return to_chars_string(v, std::chars_format::fixed, 2); }

// Tick positions at 1, 2 or 5 times a power of ten, about `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target) {
  const double raw = (hi - lo) / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string tick_label(double v, double step) {
  const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
  return to_chars_string(v, std::chars_format::fixed, decimals);
}

}  // namespace

std::string format_value(double v) { return to_chars_string(v, std::chars_format::general, 9); }

std::string format_fixed(double v) { return to_chars_string(v, std::chars_format::fixed, 6); }

std::vector<CurvePoint> ir_pressure_curve(double alpha_max, int points) {
  if (!(alpha_max > 0) || !std::isfinite(alpha_max)) {
    throw DomainError("ir_pressure_curve: alpha_max must be > 0");
  }
  if (points < 2) throw DomainError("ir_pressure_curve: points must be >= 2");
  std::vector<CurvePoint> curve;
  curve.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double alpha = i == points - 1 ? alpha_max : alpha_max * i / (points - 1);
    curve.push_back({alpha, ir_truncated_pressure(alpha).reduced_pressure});
  }
  return curve;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "alpha,reduced_pressure\n";
  for (const auto& p : curve) {
    out += format_fixed(p.alpha);
    out += ',';
    out += format_value(p.reduced_pressure);
    out += '\n';
  }
  return out;
}

std::string curve_svg(const std::vector<CurvePoint>& curve) {
  if (curve.size() < 2) throw DomainError("curve_svg: need at least two points");
  constexpr double width = 640;
  constexpr double height = 420;
  constexpr double left = 90;
  constexpr double right = 20;
  constexpr double top = 20;
  constexpr double bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const double x_lo = curve.front().alpha;
  const double x_hi = curve.back().alpha;
  const auto [min_it, max_it] = std::minmax_element(
      curve.begin(), curve.end(),
      [](const CurvePoint& a, const CurvePoint& b) { return a.reduced_pressure < b.reduced_pressure; });
  double y_lo = min_it->reduced_pressure;
  double y_hi = max_it->reduced_pressure;
  if (y_hi - y_lo <= 0) {
    y_lo -= 1;
    y_hi += 1;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  auto px = [&](double a) { return left + (a - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double p) { return top + (y_hi - p) / (y_hi - y_lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(width) +
         "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(width) + " " + coord(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + coord(width) + "\" height=\"" + coord(height) +
         "\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";

  // Axes frame.
  svg += "<rect x=\"" + coord(left) + "\" y=\"" + coord(top) + "\" width=\"" + coord(plot_w) +
         "\" height=\"" + coord(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const auto x_ticks = nice_ticks(x_lo, x_hi, 8);
  const double x_step = x_ticks.size() > 1 ? x_ticks[1] - x_ticks[0] : x_hi - x_lo;
  for (double t : x_ticks) {
    const double x = px(t);
    svg += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(top + plot_h) + "\" x2=\"" + coord(x) +
           "\" y2=\"" + coord(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(x) + "\" y=\"" + coord(top + plot_h + 20) + "\" text-anchor=\"middle\">" +
           tick_label(t, x_step) + "</text>\n";
  }
  const auto y_ticks = nice_ticks(y_lo, y_hi, 6);
  const double y_step = y_ticks.size() > 1 ? y_ticks[1] - y_ticks[0] : y_hi - y_lo;
  for (double t : y_ticks) {
    const double y = py(t);
    svg += "<line x1=\"" + coord(left - 5) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(left) + "\" y2=\"" +
           coord(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(left - 8) + "\" y=\"" + coord(y + 4) + "\" text-anchor=\"end\">" +
           tick_label(t, y_step) + "</text>\n";
  }
  if (y_lo < 0 && y_hi > 0) {
    svg += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(py(0)) + "\" x2=\"" + coord(left + plot_w) +
           "\" y2=\"" + coord(py(0)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }

  svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i) svg += ' ';
    svg += coord(px(curve[i].alpha)) + "," + coord(py(curve[i].reduced_pressure));
  }
  svg += "\"/>\n";

  svg += "<text x=\"" + coord(left + plot_w / 2) + "\" y=\"" + coord(height - 15) +
         "\" text-anchor=\"middle\">Parameter α</text>\n";
  svg += "<text x=\"20\" y=\"" + coord(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         coord(top + plot_h / 2) + ")\">Casimir pressure in units of d⁻⁴</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  const std::filesystem::path target = path.empty() ? path : std::filesystem::absolute(path);
  if (target.empty() || !target.has_filename()) throw IoError("cannot write '" + path.string() + "': not a file path");
  auto temp = target;
  temp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));

  // "x": exclusive creation, so concurrent writers never share a temp file.
  std::FILE* f = std::fopen(temp.c_str(), "wbx");
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  const bool written = std::fwrite(content.data(), 1, content.size(), f) == content.size();
  const bool closed = std::fclose(f) == 0;
  if (!written || !closed) {
    std::filesystem::remove(temp);
    throw IoError("cannot write '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw IoError("cannot write '" + path.string() + "': " + ec.message());
  }
}

}  // namespace casimir
