#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torus/markoff.hpp"

namespace torus {

struct SpectrumSummary {
  double systole_length = 0.0;
  Slope systole_slope;
  /// (threshold, number of geodesics with length strictly below it)
  std::vector<std::pair<double, std::int64_t>> counts;
  /// N(2T) / N(T) at the largest usable T; ~4 for quadratic growth
  double growth_ratio = 0.0;
};

/// The shortest closed geodesic; always simple, found in the reduced triple.
GeodesicRecord systole(const SurfacePoint& pt);

/// Counting function N(t) = #{gamma : l_gamma < t} at each threshold
/// (thresholds must be ascending), plus the doubling ratio at the top.
SpectrumSummary counting_function(const SurfacePoint& pt, std::vector<double> thresholds,
                                  int threads = 1);

/// Collar half-width function w(s) = 2 arcsinh(1 / sinh(s / 2)); strictly
/// decreasing, blows up as s -> 0.
double collar_width(double l_mu);

struct PairViolation {
  Slope a;
  Slope b;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Checks the collar inequality i(gamma, mu) * w(l_mu) <= l_gamma over all
/// ordered pairs of enumerated geodesics with length < cutoff.  The
/// returned violation list is expected to be empty (the inequality is a
/// theorem).
std::vector<PairViolation> collar_check(const SurfacePoint& pt, double cutoff);

/// Checks sinh(l_a/2) sinh(l_b/2) >= (1/4) sinh(sys/2) (l_a + l_b) over all
/// enumerated once-meeting pairs with lengths < cutoff; expected empty.
std::vector<PairViolation> product_lower_bound_check(const SurfacePoint& pt, double cutoff);

}  // namespace torus
