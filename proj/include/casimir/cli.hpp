#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/cutoffs.hpp"
#include "casimir/modesum.hpp"

namespace casimir {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// exp, exp4, tanh, none. Throws DomainError for other names.
CutoffSpec parse_cutoff(std::string_view name);

/// Pressure by a named method: direct, em, abel-plana or closed; `auto`
/// chooses direct for exp/exp4, abel-plana for tanh and closed for none.
/// Throws UnsupportedError for combinations without a valid evaluation.
PressureResult compute_pressure(const CutoffSpec& spec, std::string_view method, const ReducedParams& params);

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir
