#pragma once

#include <cmath>

namespace casimir {

/// Compensated (Kahan-Babuska / Neumaier) accumulator.
///
/// Unlike plain Kahan summation the compensation stays correct when an
/// addend is larger in magnitude than the running sum, so the result is
/// insensitive to the order of the terms up to the final rounding.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar initial) : sum_(initial) {}

  CompensatedSum& operator+=(Scalar value) {
    const Scalar t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(Scalar value) { return *this += -value; }

  Scalar value() const { return sum_ + compensation_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

template <typename Scalar, typename Range>
Scalar compensated_sum(const Range& values) {
  CompensatedSum<Scalar> acc;
  for (const auto& v : values) acc += static_cast<Scalar>(v);
  return acc.value();
}

}  // namespace casimir
