#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "torus/farey.hpp"

namespace torus {

/// Three simple closed geodesics meeting pairwise in a single point, with the
/// traces of their holonomies.  The traces of such a configuration satisfy
/// the generalized Markoff cubic
///
///   x1^2 + x2^2 + x3^2 - x1 x2 x3 = kappa,   x_i > 2,
///
/// where kappa = 2 - 2 cosh(l_delta / 2) for boundary length l_delta.
struct FareyTriple {
  std::array<Slope, 3> slopes;
  std::array<double, 3> traces;
};

/// One simple closed geodesic: trace = 2 cosh(length / 2).
struct GeodesicRecord {
  Slope slope;
  double trace = 0.0;
  double length = 0.0;
};

/// A marked hyperbolic structure on the one-holed torus with boundary length
/// l_delta, encoded by the trace triple on the basis curves (1,0), (0,1),
/// (1,1).  Immutable after construction; freely shareable across threads.
struct SurfacePoint {
  double boundary_length = 0.0;
  double kappa = 0.0;  ///< 2 - 2 cosh(boundary_length / 2), stored once
  FareyTriple seed;
};

/// kappa = 2 - 2 cosh(l_delta / 2); zero exactly at the cusp.
double kappa_of_boundary(double l_delta);

double cubic_residual(const FareyTriple& t, double kappa);

enum class RootChoice { smaller, larger };

/// Builds the surface with tr(1,0) = x1, tr(0,1) = x2 and the third seed
/// trace solved from the cubic
///   x3^2 - x1 x2 x3 + (x1^2 + x2^2 - kappa) = 0.
/// Both roots exceed 2 whenever the discriminant is nonnegative; `root`
/// selects between them (they are the two Vieta companions of the edge).
SurfacePoint make_surface_point(double x1, double x2, double l_delta,
                                RootChoice root = RootChoice::smaller);

/// Surface from a full seed triple; validates x_i > 2 and the cubic residual
/// (1e-9 relative).
SurfacePoint surface_point_from_seed(double x1, double x2, double x3, double l_delta);

/// Surface with systole epsilon pinned to slope (1,0) and equal crossing
/// curves: x1 = 2 cosh(epsilon/2), x2 = x3 solved from the cubic.  The
/// crossing curves are long when epsilon is small (collar lemma); throws if
/// epsilon is too large for (1,0) to be the systole.
SurfacePoint near_cusp_point(double epsilon, double l_delta);

/// Replaces coordinate `index` by x_j x_k - x_i (an involution on triples)
/// and its slope by the other Farey companion of the remaining pair.
FareyTriple vieta_flip(const FareyTriple& t, int index);

/// Walks descending Vieta flips from the seed to the minimal triple, from
/// which every flip is non-decreasing.  Its minimum coordinate is the systole
/// trace, and the tree of triples grows monotonically away from it.
FareyTriple reduced_triple(const SurfacePoint& pt);

/// Length cutoffs beyond this exhaust the double range (trace ~ 1e130);
/// enumeration rejects them rather than switching to a log domain.
inline constexpr double kMaxLengthCutoff = 600.0;

/// Every simple closed geodesic of length < length_cutoff, exactly once.
///
/// Best-first traversal of the triple tree rooted at the reduced triple,
/// keyed by the newest trace; pruning is sound because forward flips strictly
/// increase the newest coordinate.  Serial traversal (threads <= 1) emits
/// records in nondecreasing trace order and is deterministic.  With
/// threads > 1 the frontier is split into disjoint subtrees and worker
/// outputs are concatenated in worker order, which is deterministic for a
/// fixed thread count and contains exactly the same records.
std::vector<GeodesicRecord> enumerate_geodesics(const SurfacePoint& pt,
                                                double length_cutoff,
                                                int threads = 1);

/// Every Markoff triple of geodesics all of whose traces lie below the
/// cutoff.  Contains every Farey-neighbor pair with length sum < cutoff.
std::vector<FareyTriple> enumerate_triples(const SurfacePoint& pt, double length_cutoff);

/// Unordered Farey-neighbor pairs with l_a + l_b < sum_length_cutoff, each
/// exactly once, in deterministic order.
std::vector<std::pair<GeodesicRecord, GeodesicRecord>> farey_neighbor_pairs(
    const SurfacePoint& pt, double sum_length_cutoff);

/// Trace of the simple closed geodesic of slope s, computed by the Vieta
/// recursion t(mediant) = t(left) t(right) - t(companion) along the
/// Stern-Brocot path from the base triangle.
double trace_of_slope(const SurfacePoint& pt, Slope s);

/// Independent oracle: realizes the surface by explicit unit-determinant
/// 2x2 matrices A, B with tr A = x1, tr B = x2, tr AB = x3 and multiplies
/// out the Christoffel word of the slope.  Shares no arithmetic with
/// trace_of_slope beyond the base traces.
double fricke_oracle(const SurfacePoint& pt, Slope s);

/// Trace of A B A^-1 B^-1 for the oracle matrices; equals kappa - 2
/// = -2 cosh(l_delta / 2) for any valid surface.
double fricke_commutator_trace(const SurfacePoint& pt);

}  // namespace torus
