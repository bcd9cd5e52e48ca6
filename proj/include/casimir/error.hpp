#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace casimir {

/// Invalid argument or parameter outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested combination (cutoff family, order, method) is not supported.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Summation or quadrature stopped before convergence. Carries the
/// error estimate that was actually reached.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : NumericError(what + " (achieved error " + format(achieved) + ")"), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

  double achieved_;
};

/// An output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
