#include "torus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torus {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// arccos/arcsin arguments are clamped when within this window of [-1, 1];
// anything further out signals a logic bug, not roundoff.
constexpr double kClampSlack = 1e-12;

double half_sinh(double trace) { return std::sqrt(trace * trace / 4.0 - 1.0); }

}  // namespace

double length_from_trace(double x) {
  require(std::isfinite(x) && x > 2.0, "length_from_trace: trace must exceed 2");
  return 2.0 * std::acosh(x / 2.0);
}

double trace_from_length(double l) {
  require(std::isfinite(l) && l > 0.0, "trace_from_length: length must be positive");
  return 2.0 * std::cosh(l / 2.0);
}

GeodesicRecord record_for_slope(const SurfacePoint& pt, Slope s) {
  const double t = trace_of_slope(pt, s);
  return GeodesicRecord{normalize_slope(s.p, s.q), t, length_from_trace(t)};
}

AnglePair angle_cosine_rule(double a_trace, double b_trace, double c_trace, double l_delta) {
  FareyTriple probe{{Slope{1, 0}, Slope{0, 1}, Slope{1, 1}}, {a_trace, b_trace, c_trace}};
  const double kappa = kappa_of_boundary(l_delta);
  double scale = std::abs(kappa);
  for (double x : probe.traces) {
    require(std::isfinite(x) && x > 2.0, "angle_cosine_rule: traces must exceed 2");
    scale = std::max(scale, x * x);
  }
  if (std::abs(cubic_residual(probe, kappa)) > 1e-6 * scale)
    throw std::domain_error("angle_cosine_rule: traces do not form a triple on the cubic");

  const double a = length_from_trace(a_trace) / 2.0;
  const double b = length_from_trace(b_trace) / 2.0;
  const double sa = half_sinh(a_trace), sb = half_sinh(b_trace);
  const double cos_num = (a_trace / 2.0) * (b_trace / 2.0) - c_trace / 2.0;
  const double u = cos_num / (sa * sb);
  if (std::abs(u) > 1.0 + kClampSlack)
    throw std::range_error("angle_cosine_rule: cosine argument outside [-1, 1]");
  const double uc = std::clamp(u, -1.0, 1.0);
  // The sine of the same angle has the closed form cosh(r) / (sinh a sinh b)
  // on the cubic; atan2 of the two expressions stays accurate when the
  // cosine is within roundoff of +-1 (very sharp angles between long
  // geodesics), where arccos alone would lose everything.  A genuinely
  // degenerate triangle (sine 0) cannot satisfy the cubic and is caught by
  // the residual check above.
  const double sin_val = std::cosh(l_delta / 4.0) / (sa * sb);
  const double angle = std::atan2(sin_val, uc);

  AnglePair out;
  out.alpha = GeodesicRecord{Slope{1, 0}, a_trace, 2.0 * a};
  out.beta = GeodesicRecord{Slope{0, 1}, b_trace, 2.0 * b};
  out.third_trace = c_trace;
  out.angle = angle;
  return out;
}

double angle_arcsin(double a_trace, double b_trace, double l_delta) {
  const double sa = half_sinh(a_trace), sb = half_sinh(b_trace);
  const double arg = std::cosh(l_delta / 4.0) / (sa * sb);
  if (arg > 1.0 + kClampSlack)
    throw std::domain_error("angle_arcsin: sinh(a) sinh(b) < cosh(l_delta/4)");
  return std::asin(std::min(arg, 1.0));
}

double angle_differential(double a_trace, double b_trace, double l_delta,
                          double dl_alpha, double dl_beta, double singular_tol) {
  const double r = l_delta / 4.0;
  const double cr = std::cosh(r);
  const double sa = half_sinh(a_trace), sb = half_sinh(b_trace);
  const double ca = a_trace / 2.0, cb = b_trace / 2.0;
  const double disc = sa * sa * sb * sb - cr * cr;
  // Right-angle locus: the angle attains its maximum and the form extends
  // continuously by 0.
  if (disc < singular_tol * cr * cr) return 0.0;
  return -cr * ((ca / sa) * dl_alpha + (cb / sb) * dl_beta) / (2.0 * std::sqrt(disc));
}

TwistOrbit twist_orbit(const SurfacePoint& pt, Slope gamma, Slope gamma_prime) {
  gamma = normalize_slope(gamma.p, gamma.q);
  gamma_prime = normalize_slope(gamma_prime.p, gamma_prime.q);
  require(is_farey_neighbor(gamma, gamma_prime),
          "twist_orbit: curves must meet exactly once");

  TwistOrbit o;
  o.gamma = record_for_slope(pt, gamma);
  o.gamma_prime = record_for_slope(pt, gamma_prime);
  const double r = pt.boundary_length / 4.0;
  o.perp = std::asinh(std::cosh(r) / std::sinh(o.gamma.length / 2.0));

  const double ratio = (o.gamma_prime.trace / 2.0) / std::cosh(o.perp);
  if (ratio < 1.0 - kClampSlack)
    throw std::logic_error("twist_orbit: offset equation has no solution");
  const double theta = std::acosh(std::max(ratio, 1.0));

  // theta <= 0 makes n = +1 the shorter companion; `step` is the matching
  // oriented representative of gamma.
  o.theta = -theta;
  const FareyChildren c = farey_children(gamma_prime, gamma);
  const double t_plus = trace_of_slope(pt, c.mediant);
  const double t_minus = trace_of_slope(pt, c.difference);
  double t_next;
  if (t_plus <= t_minus) {
    o.step = gamma;
    t_next = t_plus;
  } else {
    o.step = Slope{-gamma.p, -gamma.q};
    t_next = t_minus;
  }
  const double predicted =
      2.0 * std::cosh(o.gamma.length / 2.0 + o.theta) * std::cosh(o.perp);
  if (std::abs(predicted - t_next) > 1e-6 * t_next)
    throw std::logic_error("twist_orbit: orbit formula disagrees with the tree trace");
  return o;
}

double orbit_length(const TwistOrbit& o, double s) {
  const double c = std::cosh(s / 2.0 + o.theta) * std::cosh(o.perp);
  return 2.0 * std::acosh(c);
}

double orbit_length_at(const TwistOrbit& o, std::int64_t n) {
  return orbit_length(o, static_cast<double>(n) * o.gamma.length);
}

Slope orbit_slope(const TwistOrbit& o, std::int64_t n) {
  return normalize_slope(o.gamma_prime.slope.p + n * o.step.p,
                         o.gamma_prime.slope.q + n * o.step.q);
}

SurfacePoint twist_deform(const SurfacePoint& pt, Slope mu, double s) {
  mu = normalize_slope(mu.p, mu.q);
  const MappingClass g = change_of_basis_to(mu);
  // The second basis vector: g^-1 (0,1) = (-g.b, g.a) since det g = 1.
  const Slope eta = normalize_slope(-g.b, g.a);
  const TwistOrbit o = twist_orbit(pt, mu, eta);

  const double l_mu = o.gamma.length;
  const double cp = std::cosh(o.perp);
  const double x_mu = o.gamma.trace;
  const double x_eta = 2.0 * std::cosh(s / 2.0 + o.theta) * cp;
  // Third basis curve mu + eta is one of the two orbit neighbors of eta.
  const Slope mediant = normalize_slope(-g.b + mu.p, g.a + mu.q);
  const double shift = mediant == orbit_slope(o, 1) ? l_mu : -l_mu;
  const double x_med = 2.0 * std::cosh((s + shift) / 2.0 + o.theta) * cp;

  // Traces on the (mu, eta) basis determine the deformed point; re-express
  // the standard basis there and read its traces back.
  const SurfacePoint in_mu_basis =
      surface_point_from_seed(x_mu, x_eta, x_med, pt.boundary_length);
  const double y1 = trace_of_slope(in_mu_basis, apply_mapping_class(g, Slope{1, 0}));
  const double y2 = trace_of_slope(in_mu_basis, apply_mapping_class(g, Slope{0, 1}));
  const double y3 = trace_of_slope(in_mu_basis, apply_mapping_class(g, Slope{1, 1}));
  return surface_point_from_seed(y1, y2, y3, pt.boundary_length);
}

TwistDifferential::TwistDifferential(const SurfacePoint& pt, Slope mu)
    : pt_(pt), mu_(normalize_slope(mu.p, mu.q)), to_basis_(change_of_basis_to(mu_)) {
  eta_p_ = -to_basis_.b;
  eta_q_ = to_basis_.a;
  const Slope eta = normalize_slope(eta_p_, eta_q_);
  const TwistOrbit o = twist_orbit(pt_, mu_, eta);
  const double cp = std::cosh(o.perp);
  x_eta_ = o.gamma_prime.trace;
  d_eta_ = std::sinh(o.theta) * cp;
  const Slope mediant = normalize_slope(mu_.p + eta_p_, mu_.q + eta_q_);
  const double shift = mediant == orbit_slope(o, 1) ? o.gamma.length : -o.gamma.length;
  x_med_ = trace_of_slope(pt_, mediant);
  d_med_ = std::sinh(shift / 2.0 + o.theta) * cp;
}

double TwistDifferential::trace_derivative(Slope nu) const {
  nu = normalize_slope(nu.p, nu.q);
  const Slope target = apply_mapping_class(to_basis_, nu);
  if (target.q == 0) return 0.0;  // nu is mu itself
  if (target.p == 0) return d_eta_;

  const std::int64_t sign = target.p > 0 ? 1 : -1;
  const std::int64_t goal_p = sign * target.p, goal_q = target.q;
  // Stable trace of the mu-basis slope (a, b): map back to the standard
  // marking and walk up from the seed there.
  const auto value_of = [&](std::int64_t a, std::int64_t b) {
    const std::int64_t pa = sign * a;
    return trace_of_slope(pt_, normalize_slope(mu_.p * pa + eta_p_ * b,
                                               mu_.q * pa + eta_q_ * b));
  };

  double tl = x_eta_, dl = d_eta_;  // basis slope (0, 1)
  double tr = trace_of_slope(pt_, mu_), dr = 0.0;
  double tm, dm;
  if (sign > 0) {
    tm = x_med_;
    dm = d_med_;
  } else {
    tm = value_of(1, 1);
    dm = tr * d_eta_ - d_med_;  // derivative of the companion x_mu x_eta - x_med
  }
  std::int64_t pl = 0, ql = 1, pr = 1, qr = 0;
  while (true) {
    const std::int64_t pm = pl + pr, qm = ql + qr;
    if (pm == goal_p && qm == goal_q) return dm;
    const __int128 side =
        static_cast<__int128>(goal_p) * qm - static_cast<__int128>(goal_q) * pm;
    if (side < 0) {
      const double dn = dl * tm + tl * dm - dr;
      const double tn = value_of(pl + pm, ql + qm);
      tr = tm;
      dr = dm;
      pr = pm;
      qr = qm;
      tm = tn;
      dm = dn;
    } else {
      const double dn = dm * tr + tm * dr - dl;
      const double tn = value_of(pm + pr, qm + qr);
      tl = tm;
      dl = dm;
      pl = pm;
      ql = qm;
      tm = tn;
      dm = dn;
    }
    if (!std::isfinite(tm)) throw std::overflow_error("twist derivative: trace overflow");
  }
}

double TwistDifferential::length_derivative(Slope nu) const {
  nu = normalize_slope(nu.p, nu.q);
  const double d = trace_derivative(nu);
  if (d == 0.0) return 0.0;
  const double x = trace_of_slope(pt_, nu);
  return d / std::sqrt(x * x / 4.0 - 1.0);
}

double twist_derivative(const SurfacePoint& pt, Slope nu, Slope mu) {
  return TwistDifferential(pt, mu).length_derivative(nu);
}

WolpertCheck wolpert_derivative_check(const SurfacePoint& pt, Slope gamma, Slope gamma_prime) {
  const TwistOrbit o = twist_orbit(pt, gamma, gamma_prime);
  WolpertCheck out;
  // d/ds 2 arccosh(cosh(s/2 + theta) cosh(perp)) at s = 0 is
  // sinh(theta) cosh(perp) / sinh(l'/2); its magnitude is the cosine of the
  // acute intersection angle.
  out.analytic =
      -std::sinh(o.theta) * std::cosh(o.perp) / std::sinh(o.gamma_prime.length / 2.0);
  const double h = 1e-4;
  out.finite_diff = (orbit_length(o, h) - orbit_length(o, -h)) / (2.0 * h);
  if (out.analytic > 1.0 + kClampSlack)
    throw std::logic_error("wolpert_derivative_check: cosine above 1");
  return out;
}

}  // namespace torus
