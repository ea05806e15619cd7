#pragma once

namespace torus {

/// Compensated (Kahan) accumulator.  Series here have thousands of tiny
/// positive terms; compensation keeps the result independent of summation
/// order to well below 1e-12.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  KahanAccumulator& operator+=(double value) {
    add(value);
    return *this;
  }

  /// Folds another accumulator in (used when merging per-worker partials).
  void merge(const KahanAccumulator& other) {
    add(other.sum);
    add(-other.compensation);
  }

  double value() const { return sum; }
};

}  // namespace torus
