#pragma once

#include <cmath>

namespace btv {

/// Compensated (Kahan-Neumaier) accumulator. Deterministic for a fixed
/// order of add() calls; value() = running sum plus the compensation term.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  /// Folds another accumulator in without losing its compensation term.
  void add_compensated(const KahanSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace btv
