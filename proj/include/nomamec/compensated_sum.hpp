#pragma once

#include <cmath>

namespace nomamec {

/// Neumaier (improved Kahan-Babuska) summation. The running correction
/// captures the exact rounding error of every addition (TwoSum), so
/// alternating sums lose only what the individual terms already carry.
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace nomamec
