#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "torus/geometry.hpp"

namespace torus {

/// Result of a truncated series evaluation.  tail_bound is an upper bound for
/// the omitted tail; the geodesic-count constant in it is calibrated
/// empirically with a 2x safety factor (the exponential decay is exact, the
/// count is not), so identity checks compare against a tolerance rather than
/// the bound itself.
struct SeriesReport {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double cutoff_length = 0.0;
  double tail_bound = 0.0;
  std::optional<double> target;
  std::optional<double> abs_error_vs_target;
};

/// McShane's identity on the cusped torus:
///   sum over simple closed geodesics of 2 / (1 + exp l_gamma) = 1.
/// Requires kappa = 0; partial sum over lengths < cutoff, target 1.
SeriesReport mcshane_sum(const SurfacePoint& pt, double cutoff, int threads = 1);

/// The boundary-length generalization:
///   sum of arctan(cosh(l_delta/4) / sinh(l_gamma/2)) = 3 pi / 2
/// over all simple closed geodesics, for every point of the Teichmueller
/// space.  Partial sum over lengths < cutoff, target 3 pi / 2.
SeriesReport arctan_sum(const SurfacePoint& pt, double cutoff, int threads = 1);

/// Angles between consecutive Dehn-twist images of gamma_prime around gamma,
/// summed for n in [-half_window, half_window):
///   sum of angle(T^n gamma', T^{n+1} gamma')
///     -> pi - 2 arctan(cosh(l_delta/4) / sinh(l_gamma/2)).
/// Each term is the cosine-rule angle of the triple
/// (T^n gamma', T^{n+1} gamma', gamma); convergence is monotone.
SeriesReport telescoping_sum(const SurfacePoint& pt, Slope gamma, Slope gamma_prime,
                             std::int64_t half_window);

struct VariationReport {
  SeriesReport signed_sum;  ///< target 0
  double abs_sum = 0.0;     ///< sum of |term|
};

/// Variation of the angle series along the Fenchel-Nielsen field t(mu).
///
/// Terms run over ordered Farey-neighbor pairs (alpha, beta) with
/// l_alpha + l_beta < sum_length_cutoff.  Each unordered pair carries the
/// two supplementary angle branches; the ordering selects the branch via the
/// sign of the determinant of the normalized representatives, so swapping
/// the pair negates the term.  The length derivatives dl . t(mu) are
/// computed by central differences of the exact twist flow (one flow per mu,
/// shared by all terms), which keeps their signs mutually consistent.
/// The signed sum vanishes; the absolute sum is finite and its growth under
/// cutoff increase measures the convergence tail.
VariationReport variation_sum(const SurfacePoint& pt, Slope mu, double sum_length_cutoff);

enum class TermKind { mcshane, arctan, variation };

/// Certified-in-form tail bound for the omitted part of a series: bounds the
/// number of geodesics (or neighbor pairs) per unit length shell by a
/// quadratic with an empirically fitted, 2x safety-factored constant, and
/// sums shell_count * max_term over integer shells past the cutoff.  The
/// term decay factors are exact.  Throws if cutoff is below the systole.
double tail_estimate(const SurfacePoint& pt, double cutoff, TermKind kind);

/// Test function for the degeneration limit: continuous on [0, 1] with
/// f(x) = fprime0 * x + O(x^(1+delta)).
struct ScalarFunction {
  std::function<double(double)> f;
  double fprime0 = 0.0;
  std::string name;
};

/// Presets: "arctan" (the 3pi/2 identity's term, depends on l_delta),
/// "sech-linear" (f(u) = u), "mcshane" (the cusp identity's term).
ScalarFunction scalar_function_preset(const std::string& name, double l_delta);

/// Behaviour of sum f(sech(l_gamma / 2)) as the systole degenerates:
///
///   lim = f(1) + (pi sech(l_delta / 4)) f'(0).
///
/// Evaluated at the near-cusp point with systole epsilon, split into the
/// systole term f(sech(epsilon/2)), the sum over the once-meeting twist
/// orbit (which the Dehn twist around the systole sweeps out), and a
/// remainder over curves crossing the systole at least twice, bounded by
/// tail_bound_cusp.
struct DegenerationReport {
  double epsilon = 0.0;
  double systole_term = 0.0;
  double orbit_sum = 0.0;        ///< sum of f(sech(l/2)) over the orbit
  double orbit_sech_sum = 0.0;   ///< sum of sech(l/2) over the orbit
  double orbit_sech_target = 0.0;  ///< pi sech(l_delta / 4)
  SeriesReport report;  ///< value = systole_term + orbit_sum
};

DegenerationReport degeneration_limit(double l_delta, double epsilon, const ScalarFunction& f);

/// Upper bound for sum exp(-t l_gamma) over simple geodesics meeting the
/// systole at least min_crossings times, from the double geometric series
///
///   (1 / (1 - e^{-t K l_sys})) * (e^{-t K N l_cross} / (1 - e^{-t K l_cross}))
///
/// with K = 1/2 the norm-comparison constant, l_sys the systole and l_cross
/// the shortest crossing curve.  Requires t > 0 (decaying terms).
double tail_bound_cusp(const SurfacePoint& pt, int min_crossings, double t);

}  // namespace torus
