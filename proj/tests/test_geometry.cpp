#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torus/geometry.hpp"

using namespace torus;
using doctest::Approx;

namespace {
const double kRightAngleTrace = 2.0 * std::sqrt(2.0);  // sinh(l/2) = 1
SurfacePoint hexagonal() { return make_surface_point(3.0, 3.0, 0.0); }
}  // namespace

TEST_CASE("length/trace conversion") {
  CHECK(length_from_trace(3.0) == Approx(1.9248473002384139).epsilon(1e-14));
  for (double x : {2.001, 3.0, 100.0})
    CHECK(trace_from_length(length_from_trace(x)) == Approx(x).epsilon(1e-12));
  CHECK(length_from_trace(2.0 + 1e-12) < 1e-5);
  CHECK_THROWS_AS(length_from_trace(2.0), std::domain_error);
  CHECK_THROWS_AS(length_from_trace(1.5), std::domain_error);
  CHECK_THROWS_AS(trace_from_length(0.0), std::domain_error);
}

TEST_CASE("cosine rule angle at the hexagonal point") {
  const AnglePair acute = angle_cosine_rule(3.0, 3.0, 3.0, 0.0);
  CHECK(acute.angle == Approx(std::acos(0.6)).epsilon(1e-12));
  CHECK(std::cos(acute.angle) == Approx(0.6).epsilon(1e-12));
  CHECK(std::sin(acute.angle) == Approx(0.8).epsilon(1e-12));

  const AnglePair obtuse = angle_cosine_rule(3.0, 3.0, 6.0, 0.0);
  CHECK(obtuse.angle == Approx(std::numbers::pi - std::acos(0.6)).epsilon(1e-12));

  // traces off the cubic are rejected (this is also where a degenerate
  // triangle with cos = 1 would land)
  CHECK_THROWS_AS(angle_cosine_rule(3.0, 3.0, 4.0, 0.0), std::domain_error);
}

TEST_CASE("sine relation holds on enumerated triples") {
  for (double l_delta : {0.0, 1.0, 2.0}) {
    const SurfacePoint pt = make_surface_point(3.0, 3.0, l_delta);
    const double cr2 = std::pow(std::cosh(l_delta / 4.0), 2);
    for (const auto& t : enumerate_triples(pt, 20.0)) {
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const AnglePair ap =
            angle_cosine_rule(t.traces[i], t.traces[j], t.traces[k], l_delta);
        const double sa = std::sinh(ap.alpha.length / 2.0);
        const double sb = std::sinh(ap.beta.length / 2.0);
        const double lhs = sa * sa * sb * sb * std::pow(std::sin(ap.angle), 2);
        CHECK(std::abs(lhs - cr2) <= 1e-9 * cr2);
      }
    }
  }
}

TEST_CASE("complementary branches sum to pi") {
  for (double l_delta : {0.0, 1.5}) {
    const SurfacePoint pt = make_surface_point(3.0, 3.2, l_delta);
    for (const auto& t : enumerate_triples(pt, 16.0)) {
      const double companion = t.traces[0] * t.traces[1] - t.traces[2];
      const double a1 = angle_cosine_rule(t.traces[0], t.traces[1], t.traces[2], l_delta).angle;
      const double a2 = angle_cosine_rule(t.traces[0], t.traces[1], companion, l_delta).angle;
      CHECK(std::abs(a1 + a2 - std::numbers::pi) < 1e-9);
    }
  }
}

TEST_CASE("triangle angles sum below pi") {
  const SurfacePoint pt = make_surface_point(3.4, 3.0, 1.0);
  int checked = 0;
  for (const auto& t : enumerate_triples(pt, 24.0)) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double acute = angle_arcsin(t.traces[i], t.traces[(i + 1) % 3], 1.0);
      sum += acute;
    }
    CHECK(sum < std::numbers::pi);
    if (++checked >= 100) break;
  }
  CHECK(checked >= 100);
}

TEST_CASE("arcsin form matches the acute cosine-rule branch") {
  CHECK(angle_arcsin(3.0, 3.0, 0.0) == Approx(std::acos(0.6)).epsilon(1e-12));
  // arcsin is sqrt-sensitive at the boundary, so the right angle is only
  // reproduced to about sqrt(eps)
  CHECK(angle_arcsin(kRightAngleTrace, kRightAngleTrace, 0.0) ==
        Approx(std::numbers::pi / 2.0).epsilon(1e-6));
  const double expected =
      std::asin(1.0 / (std::sinh(std::acosh(3.0)) * std::sinh(std::acosh(7.5))));
  CHECK(angle_arcsin(6.0, 15.0, 0.0) == Approx(expected).epsilon(1e-12));
  // sinh(a) sinh(b) below cosh(l_delta/4): no acute branch
  CHECK_THROWS_AS(angle_arcsin(2.05, 2.05, 2.0), std::domain_error);
}

TEST_CASE("angle differential: zero variation, central differences, sign") {
  CHECK(angle_differential(3.0, 3.0, 0.0, 0.0, 0.0) == 0.0);

  // finite-difference match, perturbing l_alpha only
  const double l0 = length_from_trace(3.0);
  for (double h : {1e-3, 1e-4}) {
    const double up = angle_arcsin(trace_from_length(l0 + h), 3.0, 0.0);
    const double dn = angle_arcsin(trace_from_length(l0 - h), 3.0, 0.0);
    const double fd = (up - dn) / (2.0 * h);
    const double formula = angle_differential(3.0, 3.0, 0.0, 1.0, 0.0);
    CHECK(std::abs(fd - formula) < 20.0 * h * h + 1e-10);
  }

  // growing both lengths shrinks an acute angle
  CHECK(angle_differential(3.0, 3.0, 0.0, 1.0, 1.0) < 0.0);
  CHECK(angle_differential(3.0, 3.0, 0.0, 1.0, 1.0) == Approx(-2.0 * 0.894427190999916)
                                                           .epsilon(1e-9));

  // right-angle locus extends by zero
  CHECK(angle_differential(kRightAngleTrace, kRightAngleTrace, 0.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("twist orbit at the hexagonal point") {
  const SurfacePoint pt = hexagonal();
  const TwistOrbit o = twist_orbit(pt, Slope{1, 1}, Slope{1, 0});
  CHECK(o.perp == Approx(0.8047189562170501).epsilon(1e-12));
  CHECK(o.theta == Approx(-0.4812118250596035).epsilon(1e-9));

  // n = 0 is gamma_prime itself
  CHECK(orbit_length_at(o, 0) == Approx(o.gamma_prime.length).epsilon(1e-12));
  // iterated lengths: traces 3, 6, 15 down the short side
  CHECK(trace_from_length(orbit_length_at(o, 1)) == Approx(3.0).epsilon(1e-9));
  CHECK(trace_from_length(orbit_length_at(o, 2)) == Approx(6.0).epsilon(1e-9));
  CHECK(trace_from_length(orbit_length_at(o, 3)) == Approx(15.0).epsilon(1e-9));

  CHECK_THROWS_AS(twist_orbit(pt, Slope{1, 0}, Slope{1, 2}), std::domain_error);
}

TEST_CASE("orbit lengths match tree traces for |n| <= 8") {
  const SurfacePoint points[] = {hexagonal(), make_surface_point(3.0, 3.4, 1.0),
                                 make_surface_point(3.1, 3.0, 2.0)};
  const std::pair<Slope, Slope> pairs[] = {{Slope{1, 1}, Slope{1, 0}},
                                           {Slope{0, 1}, Slope{1, 0}},
                                           {Slope{1, 2}, Slope{1, 1}}};
  for (const auto& pt : points) {
    for (const auto& [gamma, gamma_prime] : pairs) {
      const TwistOrbit o = twist_orbit(pt, gamma, gamma_prime);
      for (std::int64_t n = -8; n <= 8; ++n) {
        const double via_orbit = trace_from_length(orbit_length_at(o, n));
        const double via_tree = trace_of_slope(pt, orbit_slope(o, n));
        CHECK(std::abs(via_orbit - via_tree) <= 1e-9 * via_tree);
      }
    }
  }
}

TEST_CASE("orbit length is minimal at s = -2 theta and grows on both sides") {
  const TwistOrbit o = twist_orbit(hexagonal(), Slope{1, 1}, Slope{1, 0});
  const double s_min = -2.0 * o.theta;
  const double at_min = orbit_length(o, s_min);
  double prev = at_min;
  for (double ds : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(orbit_length(o, s_min + ds) > prev);
    CHECK(orbit_length(o, s_min + ds) == Approx(orbit_length(o, s_min - ds)).epsilon(1e-12));
    prev = orbit_length(o, s_min + ds);
  }
}

TEST_CASE("wolpert derivative check at the hexagonal point") {
  const WolpertCheck w = wolpert_derivative_check(hexagonal(), Slope{1, 1}, Slope{1, 0});
  CHECK(w.analytic == Approx(0.6).epsilon(1e-12));
  // sign convention: theta <= 0, so the twist initially shortens gamma_prime
  CHECK(w.finite_diff == Approx(-0.6).epsilon(1e-6));
  CHECK(std::abs(std::abs(w.finite_diff) - w.analytic) < 1e-8);
}

TEST_CASE("wolpert check on assorted once-meeting pairs") {
  const SurfacePoint pt = make_surface_point(3.2, 3.9, 1.3);
  const std::pair<Slope, Slope> pairs[] = {
      {Slope{1, 1}, Slope{1, 0}}, {Slope{1, 2}, Slope{1, 1}}, {Slope{2, 1}, Slope{1, 0}},
      {Slope{0, 1}, Slope{1, 0}}, {Slope{3, 2}, Slope{1, 1}}};
  for (const auto& [g, gp] : pairs) {
    const WolpertCheck w = wolpert_derivative_check(pt, g, gp);
    CHECK(w.analytic >= 0.0);
    CHECK(w.analytic <= 1.0 + 1e-12);
    CHECK(std::abs(std::abs(w.finite_diff) - w.analytic) < 1e-6);
  }
}

TEST_CASE("twist flow: invariance of l_mu and agreement with the orbit formula") {
  const SurfacePoint pt = make_surface_point(3.0, 3.6, 0.9);
  const Slope mu{1, 2};

  // l_mu is exactly constant along its own flow
  const SurfacePoint moved = twist_deform(pt, mu, 0.37);
  CHECK(trace_of_slope(moved, mu) == Approx(trace_of_slope(pt, mu)).epsilon(1e-12));
  CHECK(moved.boundary_length == pt.boundary_length);
  CHECK(std::abs(cubic_residual(moved.seed, moved.kappa)) <
        1e-9 * moved.seed.traces[2] * moved.seed.traces[2]);

  // a full Dehn twist carries eta to one of its orbit neighbors
  const double l_mu = length_from_trace(trace_of_slope(pt, mu));
  const SurfacePoint full = twist_deform(pt, mu, l_mu);
  const Slope eta{1, 1};  // meets mu once
  REQUIRE(intersection_number(mu, eta) == 1);
  const auto c = farey_children(eta, mu);
  const double twisted = trace_of_slope(full, eta);
  const double t1 = trace_of_slope(pt, c.mediant);
  const double t2 = trace_of_slope(pt, c.difference);
  const bool matches_one = std::abs(twisted - t1) < 1e-8 * t1 ||
                           std::abs(twisted - t2) < 1e-8 * t2;
  CHECK(matches_one);

  // derivative along the flow: own length is stationary, once-meeting
  // curves obey the single-cosine formula
  CHECK(std::abs(twist_derivative(pt, mu, mu)) < 1e-9);
  const WolpertCheck w = wolpert_derivative_check(pt, mu, eta);
  CHECK(std::abs(std::abs(twist_derivative(pt, eta, mu)) - w.analytic) < 1e-10);
}

TEST_CASE("twist differential matches finite differences of the flow") {
  // independent route: central differences of the deformed point, which is
  // reliable for short twisting curves
  const SurfacePoint pt = make_surface_point(3.1, 3.3, 0.7);
  const double h = 1e-5;
  for (const Slope mu : {Slope{0, 1}, Slope{1, 1}, Slope{1, 2}}) {
    const TwistDifferential flow(pt, mu);
    const SurfacePoint plus = twist_deform(pt, mu, h);
    const SurfacePoint minus = twist_deform(pt, mu, -h);
    for (const Slope nu : {Slope{1, 0}, Slope{2, 1}, Slope{3, 2}, Slope{-1, 2}, Slope{5, 2}}) {
      if (nu == mu) continue;
      const double fd = (length_from_trace(trace_of_slope(plus, nu)) -
                         length_from_trace(trace_of_slope(minus, nu))) /
                        (2.0 * h);
      CHECK(flow.length_derivative(nu) == Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("twist differential is exact for deep twisting curves") {
  // long mu, where the finite-difference route would lose everything: the
  // once-meeting closed form still pins the answer
  const SurfacePoint pt = make_surface_point(3.0, 3.0, 0.0);
  for (const Slope mu : {Slope{5, 7}, Slope{8, 3}, Slope{-7, 4}}) {
    const MappingClass g = change_of_basis_to(mu);
    const Slope partner = normalize_slope(-g.b, g.a);
    const TwistOrbit o = twist_orbit(pt, mu, partner);
    const double closed_form =
        std::sinh(o.theta) * std::cosh(o.perp) / std::sinh(o.gamma_prime.length / 2.0);
    const TwistDifferential flow(pt, mu);
    CHECK(flow.length_derivative(partner) == Approx(closed_form).epsilon(1e-11));
    CHECK(std::abs(flow.length_derivative(mu)) < 1e-12);
    // bound check across a few multi-crossing curves
    for (const Slope nu : {Slope{1, 0}, Slope{0, 1}, Slope{1, 1}, Slope{2, 3}}) {
      if (nu == mu) continue;
      const double d = flow.length_derivative(nu);
      CHECK(std::abs(d) <= static_cast<double>(intersection_number(nu, mu)) + 1e-9);
    }
  }
}
