#include "torus/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "torus/kahan.hpp"
#include "torus/spectrum.hpp"

namespace torus {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double half_sinh(double trace) { return std::sqrt(trace * trace / 4.0 - 1.0); }

std::vector<double> sorted_lengths(const std::vector<GeodesicRecord>& records) {
  std::vector<double> lengths;
  lengths.reserve(records.size());
  for (const auto& r : records) lengths.push_back(r.length);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::int64_t count_below(const std::vector<double>& lengths, double t) {
  return std::lower_bound(lengths.begin(), lengths.end(), t) - lengths.begin();
}

// Empirically fitted quadratic counting constant, doubled for safety.  The
// simple length spectrum of a holed torus grows quadratically; the constant
// is not explicit, so the tail bounds built on it are heuristic-rigorous:
// exact decay, fitted count.
double fitted_quadratic_constant(const std::vector<double>& lengths, double cutoff) {
  const double sys = lengths.front();
  double a_hat = 0.0;
  for (double t = sys + 0.5; t <= cutoff + 0.25; t += 0.5) {
    const double n = static_cast<double>(count_below(lengths, t));
    a_hat = std::max(a_hat, n / (t * t));
  }
  a_hat = std::max(a_hat, static_cast<double>(lengths.size()) / (cutoff * cutoff));
  return 2.0 * a_hat;
}

double max_term_at(TermKind kind, double t, double cr, double sys, double w_mu) {
  switch (kind) {
    case TermKind::mcshane:
      // 2 / (1 + e^l) <= 2 e^{-l}
      return 2.0 * std::exp(-t);
    case TermKind::arctan:
      // arctan(cr / sinh(t/2)) <= 2 cr e^{-t/2} for t >= 2
      return 2.0 * cr * std::exp(-t / 2.0);
    case TermKind::variation: {
      // |d(angle).t(mu)| <= cr coth(sys/2) (i_a + i_b) / (2 sqrt(S^2 - cr^2))
      // with i_a + i_b <= (l_a + l_b) / w(l_mu) and, away from finitely many
      // pairs, S^2 - cr^2 >= S^2 / 2 with S >= sinh(sys/2) sinh((t - sys)/2).
      const double coth = 1.0 / std::tanh(sys / 2.0);
      const double s_min = std::sinh(sys / 2.0) * std::sinh((t - sys) / 2.0);
      return cr * coth * (t / w_mu) / (std::numbers::sqrt2 * s_min);
    }
  }
  return 0.0;
}

double tail_from_records(const std::vector<GeodesicRecord>& records, double cutoff,
                         TermKind kind, double boundary_length, double w_mu) {
  if (records.empty()) return std::numeric_limits<double>::max();
  const auto lengths = sorted_lengths(records);
  const double sys = lengths.front();
  if (cutoff <= sys) return std::numeric_limits<double>::max();
  const double a2 = fitted_quadratic_constant(lengths, cutoff);
  const double cr = std::cosh(boundary_length / 4.0);

  KahanAccumulator tail;
  for (int k = 0; k < 4000; ++k) {
    const double t = cutoff + k;
    double shell_count;
    if (kind == TermKind::variation) {
      // pairs with length sum in [t, t+1): N_pairs(t) <= N(t)^2 / 2
      shell_count = a2 * a2 * (std::pow(t + 1.0, 4) - std::pow(t, 4)) / 2.0;
    } else {
      shell_count = a2 * (2.0 * t + 1.0);
    }
    const double inc = shell_count * max_term_at(kind, t, cr, sys, w_mu);
    tail += inc;
    if (inc < tail.value() * 1e-18 && k > 2) break;
  }
  return tail.value();
}

SeriesReport finish_report(double value, std::int64_t terms, double cutoff, double tail,
                           double target) {
  SeriesReport r;
  r.value = value;
  r.terms_used = terms;
  r.cutoff_length = cutoff;
  r.tail_bound = tail;
  r.target = target;
  r.abs_error_vs_target = std::abs(value - target);
  return r;
}

}  // namespace

SeriesReport mcshane_sum(const SurfacePoint& pt, double cutoff, int threads) {
  if (!(std::abs(pt.kappa) < 1e-15))
    throw std::domain_error("mcshane_sum: identity requires a cusp (l_delta = 0)");
  const auto records = enumerate_geodesics(pt, cutoff, threads);
  KahanAccumulator acc;
  for (const auto& r : records) acc += 2.0 / (1.0 + std::exp(r.length));
  const double tail = tail_from_records(records, cutoff, TermKind::mcshane,
                                        pt.boundary_length, 0.0);
  return finish_report(acc.value(), static_cast<std::int64_t>(records.size()), cutoff, tail, 1.0);
}

SeriesReport arctan_sum(const SurfacePoint& pt, double cutoff, int threads) {
  const double cr = std::cosh(pt.boundary_length / 4.0);
  const auto records = enumerate_geodesics(pt, cutoff, threads);
  KahanAccumulator acc;
  for (const auto& r : records) acc += std::atan(cr / half_sinh(r.trace));
  const double tail = tail_from_records(records, cutoff, TermKind::arctan,
                                        pt.boundary_length, 0.0);
  return finish_report(acc.value(), static_cast<std::int64_t>(records.size()), cutoff, tail,
                       3.0 * std::numbers::pi / 2.0);
}

SeriesReport telescoping_sum(const SurfacePoint& pt, Slope gamma, Slope gamma_prime,
                             std::int64_t half_window) {
  require(half_window >= 1, "telescoping_sum: window must be at least 1");
  const TwistOrbit o = twist_orbit(pt, gamma, gamma_prime);
  const double cr = std::cosh(pt.boundary_length / 4.0);
  const double hg = o.gamma.length / 2.0;
  const double cp = std::cosh(o.perp);

  KahanAccumulator acc;
  std::int64_t terms = 0;
  for (std::int64_t n = -half_window; n < half_window; ++n) {
    const double u0 = static_cast<double>(n) * hg + o.theta;
    const double u1 = u0 + hg;
    // Angles this far out are below 1e-240; adding zero keeps the window
    // contract without overflowing cosh.
    if (std::max(std::abs(u0), std::abs(u1)) > 290.0) {
      ++terms;
      continue;
    }
    const double ta = 2.0 * std::cosh(u0) * cp;
    const double tb = 2.0 * std::cosh(u1) * cp;
    acc += angle_cosine_rule(ta, tb, o.gamma.trace, pt.boundary_length).angle;
    ++terms;
  }

  const double target = std::numbers::pi - 2.0 * std::atan(cr / std::sinh(hg));
  // Remaining terms are dominated by two geometric tails with ratio e^{-l}.
  const double edge = std::min(std::abs(-static_cast<double>(half_window) * hg + o.theta),
                               std::abs(static_cast<double>(half_window) * hg + o.theta));
  double tail = std::numeric_limits<double>::max();
  if (edge < 290.0) {
    const double sin_edge = cr / (std::sinh(edge) * std::sinh(edge + hg) * cp * cp);
    tail = 4.0 * sin_edge / (1.0 - std::exp(-o.gamma.length));
  }
  SeriesReport r = finish_report(acc.value(), terms, 0.0, tail, target);
  r.cutoff_length = orbit_length_at(o, half_window);
  return r;
}

VariationReport variation_sum(const SurfacePoint& pt, Slope mu, double sum_length_cutoff) {
  mu = normalize_slope(mu.p, mu.q);
  const double cr = std::cosh(pt.boundary_length / 4.0);
  const auto pairs = farey_neighbor_pairs(pt, sum_length_cutoff);

  // One flow per mu; every term draws its length derivatives from the same
  // differential, so their signs are mutually consistent.
  const TwistDifferential flow(pt, mu);
  std::unordered_map<Slope, double> derivative;
  const auto dl_dt = [&](Slope s) {
    auto it = derivative.find(s);
    if (it != derivative.end()) return it->second;
    const double d = flow.length_derivative(s);
    derivative.emplace(s, d);
    return d;
  };

  KahanAccumulator signed_acc;
  KahanAccumulator abs_acc;
  std::int64_t terms = 0;
  for (const auto& [a, b] : pairs) {
    terms += 2;
    const double sa = half_sinh(a.trace), sb = half_sinh(b.trace);
    const double disc = sa * sa * sb * sb - cr * cr;
    if (disc < 1e-10 * cr * cr) continue;  // right-angle locus: terms are 0
    const double x =
        cr * ((a.trace / 2.0 / sa) * dl_dt(a.slope) + (b.trace / 2.0 / sb) * dl_dt(b.slope)) /
        (2.0 * std::sqrt(disc));
    // The ordering of the pair selects the angle branch (the sign of the
    // determinant of the normalized representatives); the two orderings give
    // supplementary angles, hence opposite differentials.
    const __int128 det =
        static_cast<__int128>(a.slope.p) * b.slope.q - static_cast<__int128>(a.slope.q) * b.slope.p;
    const double t_ab = det > 0 ? -x : x;
    signed_acc += t_ab;
    signed_acc += -t_ab;
    abs_acc += std::abs(x);
    abs_acc += std::abs(x);
  }

  VariationReport out;
  const auto records = enumerate_geodesics(pt, sum_length_cutoff);
  const double w_mu = collar_width(length_from_trace(trace_of_slope(pt, mu)));
  out.signed_sum = finish_report(signed_acc.value(), terms, sum_length_cutoff,
                                 tail_from_records(records, sum_length_cutoff,
                                                   TermKind::variation, pt.boundary_length, w_mu),
                                 0.0);
  out.abs_sum = abs_acc.value();
  return out;
}

double tail_estimate(const SurfacePoint& pt, double cutoff, TermKind kind) {
  const auto records = enumerate_geodesics(pt, cutoff);
  if (records.empty()) throw std::domain_error("tail_estimate: cutoff below the systole");
  const double w_sys = collar_width(systole(pt).length);
  return tail_from_records(records, cutoff, kind, pt.boundary_length, w_sys);
}

ScalarFunction scalar_function_preset(const std::string& name, double l_delta) {
  const double cr = std::cosh(l_delta / 4.0);
  if (name == "arctan") {
    return ScalarFunction{
        [cr](double u) {
          if (u >= 1.0) return std::numbers::pi / 2.0;
          return std::atan(cr * u / std::sqrt((1.0 - u) * (1.0 + u)));
        },
        cr, "arctan"};
  }
  if (name == "sech-linear") {
    return ScalarFunction{[](double u) { return u; }, 1.0, "sech-linear"};
  }
  if (name == "mcshane") {
    // 2 / (1 + e^l) rewritten in u = sech(l/2); quadratic near 0, so the
    // orbit contribution vanishes in the limit.
    return ScalarFunction{
        [](double u) {
          const double w = (1.0 + std::sqrt(std::max(0.0, 1.0 - u * u))) / u;
          return 2.0 / (1.0 + w * w);
        },
        0.0, "mcshane"};
  }
  throw std::invalid_argument("unknown scalar function preset: " + name);
}

DegenerationReport degeneration_limit(double l_delta, double epsilon, const ScalarFunction& f) {
  require(static_cast<bool>(f.f), "degeneration_limit: missing function");
  const SurfacePoint pt = near_cusp_point(epsilon, l_delta);
  const TwistOrbit o = twist_orbit(pt, Slope{1, 0}, Slope{0, 1});
  const double hg = o.gamma.length / 2.0;
  const double cp = std::cosh(o.perp);

  DegenerationReport out;
  out.epsilon = epsilon;
  out.systole_term = f.f(1.0 / std::cosh(epsilon / 2.0));

  // sech(l_n / 2) = 1 / (cosh(n l/2 + theta) cosh(perp)); sweep until the
  // terms fall below double noise.
  const double reach = 44.0;
  const std::int64_t n_lo = static_cast<std::int64_t>(std::floor((-reach - o.theta) / hg));
  const std::int64_t n_hi = static_cast<std::int64_t>(std::ceil((reach - o.theta) / hg));
  KahanAccumulator f_acc, sech_acc;
  std::int64_t terms = 0;
  double max_len = 0.0;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const double u = 1.0 / (std::cosh(static_cast<double>(n) * hg + o.theta) * cp);
    f_acc += f.f(u);
    sech_acc += u;
    ++terms;
    max_len = std::max(max_len, orbit_length_at(o, n));
  }
  out.orbit_sum = f_acc.value();
  out.orbit_sech_sum = sech_acc.value();
  out.orbit_sech_target = std::numbers::pi / std::cosh(l_delta / 4.0);

  const double target = f.f(1.0) + out.orbit_sech_target * f.fprime0;
  // Remainder over curves crossing the systole at least twice, scaled by the
  // near-0 slope of f; heuristic for general f.
  const double rest = 2.0 * std::max(1.0, std::abs(f.fprime0)) * tail_bound_cusp(pt, 2, 0.5);
  out.report = finish_report(out.systole_term + out.orbit_sum, terms + 1, max_len, rest, target);
  return out;
}

double tail_bound_cusp(const SurfacePoint& pt, int min_crossings, double t) {
  require(min_crossings >= 1, "tail_bound_cusp: need at least one crossing");
  if (!(t > 0.0))
    throw std::domain_error("tail_bound_cusp: bound applies to decaying terms (t > 0)");
  const FareyTriple reduced = reduced_triple(pt);
  std::array<double, 3> traces = reduced.traces;
  std::sort(traces.begin(), traces.end());
  const double l_sys = length_from_trace(traces[0]);
  const double l_cross = length_from_trace(traces[1]);
  constexpr double kNormConstant = 0.5;
  const double a = std::exp(-t * kNormConstant * l_sys);
  const double b = std::exp(-t * kNormConstant * l_cross);
  return (1.0 / (1.0 - a)) *
         (std::pow(b, static_cast<double>(min_crossings)) / (1.0 - b));
}

}  // namespace torus
