#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace casimir {

/// Locale-independent decimal with 9 significant digits (printf %.9g).
std::string format_value(double v);

/// Locale-independent fixed-point with 6 decimals (printf %.6f).
std::string format_fixed(double v);

struct CurvePoint {
  double alpha = 0.0;
  double reduced_pressure = 0.0;
};

/// Default domain and sampling of the IR-truncated pressure figure.
inline constexpr double kCurveAlphaMax = 1.58;
inline constexpr int kCurvePoints = 100;

/// IR-truncated pressure sampled at alpha_i = alpha_max * i / (points - 1).
/// Throws DomainError unless alpha_max > 0 and points >= 2.
std::vector<CurvePoint> ir_pressure_curve(double alpha_max, int points);

/// CSV with header `alpha,reduced_pressure`, one row per point, `\n` line ends.
std::string curve_csv(const std::vector<CurvePoint>& curve);

/// Standalone SVG 1.1 line chart of the curve with labelled axes and ticks.
std::string curve_svg(const std::vector<CurvePoint>& curve);

/// Writes content to path through a uniquely named, exclusively created
/// sibling file that is then renamed over the target. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace casimir
