#pragma once

#include <cmath>

namespace curveopt::detail {

// Neumaier's variant of Kahan summation. Objectives with many terms sum
// through this so that finite-difference checks at n = 1000 are limited by
// the representation of f, not by accumulated rounding.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double result() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace curveopt::detail
