#pragma once

#include <cstdint>

#include "torus/markoff.hpp"

namespace torus {

/// l = 2 arccosh(x / 2), a bijection (2, inf) -> (0, inf).
double length_from_trace(double x);

/// x = 2 cosh(l / 2), inverse of length_from_trace.
double trace_from_length(double l);

GeodesicRecord record_for_slope(const SurfacePoint& pt, Slope s);

/// Angle at the intersection of two once-meeting geodesics, computed on the
/// quotient orbifold triangle whose sides are the half-lengths.
struct AnglePair {
  GeodesicRecord alpha;
  GeodesicRecord beta;
  double third_trace = 0.0;
  double angle = 0.0;  ///< in (0, pi)
};

/// Cosine rule for the half-length triangle:
///
///   cos(angle) = (cosh a cosh b - cosh c) / (sinh a sinh b),
///   a = l_alpha/2, b = l_beta/2, c = l_gamma/2.
///
/// The traces must form a triple on the cubic for kappa(l_delta), validated
/// to 1e-6 relative.  The angle is evaluated as atan2 of the exact sine and
/// cosine expressions, so both the cosine rule and the sine relation
///
///   sinh^2 a sinh^2 b sin^2(angle) = cosh^2(l_delta / 4)
///
/// hold to relative precision even for nearly degenerate angles.
AnglePair angle_cosine_rule(double a_trace, double b_trace, double c_trace, double l_delta);

/// Acute branch in closed form: arcsin(cosh(l_delta/4) / (sinh a sinh b)).
/// Requires sinh a sinh b >= cosh(l_delta/4); the boundary case gives pi/2.
double angle_arcsin(double a_trace, double b_trace, double l_delta);

/// First-order change of the acute angle under length variations,
///
///   d(angle) = -cosh r (coth a dl_alpha + coth b dl_beta)
///              / (2 sqrt(sinh^2 a sinh^2 b - cosh^2 r)),   r = l_delta / 4,
///
/// extended by 0 across the right-angle locus, which is detected by
/// sinh^2 a sinh^2 b - cosh^2 r < singular_tol * cosh^2 r.
double angle_differential(double a_trace, double b_trace, double l_delta,
                          double dl_alpha, double dl_beta,
                          double singular_tol = 1e-10);

/// Dehn twist orbit of gamma_prime around gamma.  perp is the distance from
/// the Weierstrass point off gamma to the axis,
///
///   sinh(perp) sinh(l_gamma / 2) = cosh(l_delta / 4),
///
/// and theta the signed offset along the axis,
///
///   cosh(l_n / 2) = cosh(n l_gamma / 2 + theta) cosh(perp).
///
/// Slopes are unoriented, so the sign of theta and the direction of the
/// index n are tied: we normalize theta <= 0, which makes n = +1 the
/// shorter of the two Vieta companions of (gamma, gamma_prime).  `step`
/// records the oriented representative of gamma realizing that choice:
/// the curve at index n is normalize(gamma_prime + n * step).
struct TwistOrbit {
  GeodesicRecord gamma;
  GeodesicRecord gamma_prime;
  double perp = 0.0;
  double theta = 0.0;
  Slope step;
};

/// Requires intersection_number(gamma, gamma_prime) == 1.
TwistOrbit twist_orbit(const SurfacePoint& pt, Slope gamma, Slope gamma_prime);

/// Length after twisting by geodesic distance s along gamma
/// (s = n l_gamma is the n-fold Dehn twist):
///   2 arccosh(cosh(s / 2 + theta) cosh(perp)).
double orbit_length(const TwistOrbit& o, double s);

double orbit_length_at(const TwistOrbit& o, std::int64_t n);

Slope orbit_slope(const TwistOrbit& o, std::int64_t n);

/// The point reached from pt by the Fenchel-Nielsen twist of distance s
/// along mu, in the same marking.  l_mu is constant along the flow and the
/// lengths of curves crossing mu follow the orbit formula; the deformed
/// traces satisfy the cubic identically.
///
/// Re-expressing the point in the standard marking runs the trace recursion
/// against the grain, so this is only well conditioned for mu of moderate
/// length (traces of the mu-basis staying below ~1e6).  Derivatives along
/// the flow never need it; see TwistDifferential.
SurfacePoint twist_deform(const SurfacePoint& pt, Slope mu, double s);

/// Derivatives of trace and length functions along the Fenchel-Nielsen twist
/// flow of a fixed curve mu, at the base point.  The closed-form derivative
/// of the orbit formula seeds the basis triple and is propagated through the
/// Vieta recursion (d t_med = dt_l t_m + t_l dt_m - dt_r), while every
/// intermediate trace is re-evaluated through the stable standard-basis
/// walk.  No finite differencing, and all curves share one flow direction,
/// so the signs of different derivatives are mutually consistent.
class TwistDifferential {
 public:
  TwistDifferential(const SurfacePoint& pt, Slope mu);

  /// d tr(nu) / ds at s = 0.
  double trace_derivative(Slope nu) const;

  /// dl_nu . t(mu): the length derivative at s = 0.
  double length_derivative(Slope nu) const;

 private:
  SurfacePoint pt_;
  Slope mu_;
  MappingClass to_basis_;
  std::int64_t eta_p_ = 0, eta_q_ = 0;  // second basis vector, det(mu, eta) = 1
  double x_eta_ = 0.0, x_med_ = 0.0;
  double d_eta_ = 0.0, d_med_ = 0.0;
};

/// One-off form of TwistDifferential::length_derivative.
double twist_derivative(const SurfacePoint& pt, Slope nu, Slope mu);

struct WolpertCheck {
  double analytic = 0.0;     ///< cos of the acute intersection angle
  double finite_diff = 0.0;  ///< d/ds orbit_length at s = 0
};

/// Wolpert's formula for once-meeting curves: the twist derivative of
/// l_{gamma_prime} along t(gamma) is the cosine of the single intersection
/// angle.  With the theta <= 0 normalization the derivative at s = 0 equals
/// -cos(acute angle) exactly, so |finite_diff| = analytic up to the finite
/// difference error.  Also asserts |analytic| <= 1 (the intersection-number
/// bound specialized to one crossing).
WolpertCheck wolpert_derivative_check(const SurfacePoint& pt, Slope gamma, Slope gamma_prime);

}  // namespace torus
