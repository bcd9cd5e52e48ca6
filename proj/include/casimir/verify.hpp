#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace casimir {

/// One measured quantity compared against its expectation.
struct Check {
  std::string label;
  std::string measured;
  std::string expected;  // includes the tolerance, e.g. "0.00833333333 ± 1e-08 rel"
  bool passed = false;
};

struct CriterionReport {
  int criterion = 0;
  std::string title;
  std::vector<Check> checks;
  std::string error;  // set when the computation itself threw

  bool passed() const;
};

enum class Suite { coefficients, roots, suppression, cross_method, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

/// Criterion numbers covered by a suite, ascending.
std::vector<int> suite_criteria(Suite suite);

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10). Never throws for numeric failures:
/// they are reported through CriterionReport::error.
CriterionReport run_criterion(int criterion);

/// `PASS [n] title` or `FAIL [n] title (reason)`.
std::string summary_line(const CriterionReport& report);

/// Summary line followed by one indented line per check.
void print_report(const CriterionReport& report, std::ostream& out);

}  // namespace casimir
