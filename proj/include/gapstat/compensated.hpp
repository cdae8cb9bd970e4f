#pragma once

#include <cmath>

namespace gapstat {

/// Neumaier's variant of Kahan summation. The running error term also
/// captures the case where the incoming term dominates the partial sum.
template <typename Real = double>
class CompensatedSum {
 public:
  void add(Real term) noexcept {
    const Real t = sum_ + term;
    using std::abs;
    if (abs(sum_) >= abs(term)) {
      error_ += (sum_ - t) + term;
    } else {
      error_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(Real term) noexcept {
    add(term);
    return *this;
  }

  Real value() const noexcept { return sum_ + error_; }

 private:
  Real sum_{0};
  Real error_{0};
};

}  // namespace gapstat
