#include "torus/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torus/geometry.hpp"

namespace torus {

GeodesicRecord systole(const SurfacePoint& pt) {
  const FareyTriple t = reduced_triple(pt);
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (t.traces[i] < t.traces[best]) best = i;
  return GeodesicRecord{t.slopes[best], t.traces[best], length_from_trace(t.traces[best])};
}

SpectrumSummary counting_function(const SurfacePoint& pt, std::vector<double> thresholds,
                                  int threads) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw std::domain_error("counting_function: thresholds must be ascending");
  if (thresholds.empty()) throw std::domain_error("counting_function: no thresholds");

  const double top = thresholds.back();
  auto records = enumerate_geodesics(pt, top, threads);
  std::vector<double> lengths;
  lengths.reserve(records.size());
  for (const auto& r : records) lengths.push_back(r.length);
  std::sort(lengths.begin(), lengths.end());

  const auto count_below = [&](double t) -> std::int64_t {
    return std::lower_bound(lengths.begin(), lengths.end(), t) - lengths.begin();
  };

  SpectrumSummary out;
  const GeodesicRecord sys = systole(pt);
  out.systole_length = sys.length;
  out.systole_slope = sys.slope;
  for (double t : thresholds) out.counts.emplace_back(t, count_below(t));
  const std::int64_t at_half = count_below(top / 2.0);
  out.growth_ratio =
      at_half > 0 ? static_cast<double>(count_below(top)) / static_cast<double>(at_half) : 0.0;
  return out;
}

double collar_width(double l_mu) {
  if (!(l_mu > 0.0)) throw std::domain_error("collar_width: length must be positive");
  return 2.0 * std::asinh(1.0 / std::sinh(l_mu / 2.0));
}

std::vector<PairViolation> collar_check(const SurfacePoint& pt, double cutoff) {
  const auto records = enumerate_geodesics(pt, cutoff);
  std::vector<PairViolation> violations;
  for (const auto& mu : records) {
    const double w = collar_width(mu.length);
    for (const auto& gamma : records) {
      if (gamma.slope == mu.slope) continue;
      const double lhs = static_cast<double>(intersection_number(gamma.slope, mu.slope)) * w;
      if (lhs > gamma.length * (1.0 + 1e-12))
        violations.push_back(PairViolation{gamma.slope, mu.slope, lhs, gamma.length});
    }
  }
  return violations;
}

std::vector<PairViolation> product_lower_bound_check(const SurfacePoint& pt, double cutoff) {
  const auto records = enumerate_geodesics(pt, cutoff);
  const double sys_half_sinh = std::sinh(systole(pt).length / 2.0);
  std::vector<PairViolation> violations;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (intersection_number(records[i].slope, records[j].slope) != 1) continue;
      const double la = records[i].length, lb = records[j].length;
      const double lhs = std::sinh(la / 2.0) * std::sinh(lb / 2.0);
      const double rhs = 0.25 * sys_half_sinh * (la + lb);
      if (lhs < rhs * (1.0 - 1e-12))
        violations.push_back(PairViolation{records[i].slope, records[j].slope, lhs, rhs});
    }
  }
  return violations;
}

}  // namespace torus
