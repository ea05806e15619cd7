#include "torus/markoff.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace torus {

namespace {

constexpr double kTraceFloor = 2.0;

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double length_of_trace(double x) { return 2.0 * std::acosh(x / 2.0); }

void validate_triple(const FareyTriple& t, double kappa) {
  for (int i = 0; i < 3; ++i) {
    require(std::isfinite(t.traces[i]) && t.traces[i] > kTraceFloor,
            "triple trace must exceed 2");
    require(is_farey_neighbor(t.slopes[i], t.slopes[(i + 1) % 3]),
            "triple slopes must be pairwise Farey neighbors");
  }
  const double res = cubic_residual(t, kappa);
  double scale = std::abs(kappa);
  for (double x : t.traces) scale = std::max(scale, x * x);
  if (std::abs(res) > 1e-9 * scale)
    throw std::domain_error("triple does not satisfy the Markoff cubic");
}

FareyTriple base_triple(double x1, double x2, double x3) {
  return FareyTriple{{Slope{1, 0}, Slope{0, 1}, Slope{1, 1}}, {x1, x2, x3}};
}

}  // namespace

double kappa_of_boundary(double l_delta) {
  require(std::isfinite(l_delta) && l_delta >= 0.0, "boundary length must be >= 0");
  return 2.0 - 2.0 * std::cosh(l_delta / 2.0);
}

double cubic_residual(const FareyTriple& t, double kappa) {
  const double x1 = t.traces[0], x2 = t.traces[1], x3 = t.traces[2];
  return x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - kappa;
}

SurfacePoint make_surface_point(double x1, double x2, double l_delta, RootChoice root) {
  require(std::isfinite(x1) && x1 > kTraceFloor, "x1 must exceed 2");
  require(std::isfinite(x2) && x2 > kTraceFloor, "x2 must exceed 2");
  const double kappa = kappa_of_boundary(l_delta);
  const double disc = x1 * x1 * x2 * x2 - 4.0 * (x1 * x1 + x2 * x2 - kappa);
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "make_surface_point: no real third trace (discriminant " << disc << ")";
    throw std::domain_error(msg.str());
  }
  const double sq = std::sqrt(disc);
  const double x3 = root == RootChoice::smaller ? (x1 * x2 - sq) / 2.0 : (x1 * x2 + sq) / 2.0;
  // Both roots exceed 2: the quadratic is positive at 2 and its vertex is
  // at x1 x2 / 2 > 2.
  SurfacePoint pt{l_delta, kappa, base_triple(x1, x2, x3)};
  validate_triple(pt.seed, kappa);
  return pt;
}

SurfacePoint surface_point_from_seed(double x1, double x2, double x3, double l_delta) {
  SurfacePoint pt{l_delta, kappa_of_boundary(l_delta), base_triple(x1, x2, x3)};
  validate_triple(pt.seed, pt.kappa);
  return pt;
}

SurfacePoint near_cusp_point(double epsilon, double l_delta) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  const double kappa = kappa_of_boundary(l_delta);
  const double x1 = 2.0 * std::cosh(epsilon / 2.0);
  // x2 = x3 on the cubic: x2^2 (2 - x1) = kappa - x1^2.  The denominator is
  // evaluated as 4 sinh^2(eps/4) to avoid cancellation for small eps.
  const double denom = 4.0 * std::sinh(epsilon / 4.0) * std::sinh(epsilon / 4.0);
  const double x2 = std::sqrt((x1 * x1 - kappa) / denom);
  if (!(x2 > x1))
    throw std::domain_error("near_cusp_point: epsilon too large to be the systole");
  return surface_point_from_seed(x1, x2, x2, l_delta);
}

FareyTriple vieta_flip(const FareyTriple& t, int index) {
  require(index >= 0 && index < 3, "vieta_flip: index out of range");
  const int j = (index + 1) % 3, k = (index + 2) % 3;
  FareyTriple out = t;
  out.traces[index] = t.traces[j] * t.traces[k] - t.traces[index];
  if (!std::isfinite(out.traces[index]))
    throw std::overflow_error("vieta_flip: trace overflow");
  const FareyChildren c = farey_children(t.slopes[j], t.slopes[k]);
  out.slopes[index] = t.slopes[index] == c.mediant ? c.difference : c.mediant;
  return out;
}

FareyTriple reduced_triple(const SurfacePoint& pt) {
  FareyTriple t = pt.seed;
  for (int iter = 0; iter < 1 << 20; ++iter) {
    bool moved = false;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      if (t.traces[j] * t.traces[k] - t.traces[i] < t.traces[i]) {
        t = vieta_flip(t, i);
        moved = true;
      }
    }
    if (!moved) return t;
  }
  throw std::logic_error("reduced_triple: reduction did not terminate");
}

namespace {

// Node of the triple tree.  `newest` is the coordinate introduced by the
// flip that created the node; re-flipping it returns to the parent, so the
// children flip the other two coordinates.  Below the (reduced) root the
// newest coordinate is the maximum of its triple and forward flips strictly
// increase it, which makes cutoff pruning sound.
struct Node {
  FareyTriple t;
  int newest = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    const double ta = a.t.traces[a.newest], tb = b.t.traces[b.newest];
    if (ta != tb) return ta > tb;  // min-heap
    return a.t.slopes[a.newest] > b.t.slopes[b.newest];
  }
};

using NodeQueue = std::priority_queue<Node, std::vector<Node>, NodeOrder>;

GeodesicRecord record_of(const FareyTriple& t, int i) {
  return GeodesicRecord{t.slopes[i], t.traces[i], length_of_trace(t.traces[i])};
}

void push_children(const Node& n, double trace_bound, NodeQueue& queue) {
  for (int i = 0; i < 3; ++i) {
    if (i == n.newest) continue;
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double nt = n.t.traces[j] * n.t.traces[k] - n.t.traces[i];
    if (!std::isfinite(nt)) throw std::overflow_error("enumerate: trace overflow");
    if (nt >= trace_bound) continue;
    Node child{vieta_flip(n.t, i), i};
    queue.push(std::move(child));
  }
}

void push_root_children(const FareyTriple& root, double trace_bound, NodeQueue& queue) {
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double nt = root.traces[j] * root.traces[k] - root.traces[i];
    if (!std::isfinite(nt)) throw std::overflow_error("enumerate: trace overflow");
    if (nt >= trace_bound) continue;
    queue.push(Node{vieta_flip(root, i), i});
  }
}

double trace_bound_for_cutoff(double length_cutoff) {
  require(std::isfinite(length_cutoff) && length_cutoff > 0.0, "cutoff must be positive");
  if (length_cutoff > kMaxLengthCutoff)
    throw std::overflow_error("enumerate: cutoff exceeds the supported length range");
  return 2.0 * std::cosh(length_cutoff / 2.0);
}

// Drains one subtree serially; emitted slopes are unique by construction,
// the hash set is kept as a guard.
void drain(NodeQueue& queue, double trace_bound, std::unordered_set<Slope>& seen,
           std::vector<GeodesicRecord>& out) {
  while (!queue.empty()) {
    Node n = queue.top();
    queue.pop();
    if (seen.insert(n.t.slopes[n.newest]).second) out.push_back(record_of(n.t, n.newest));
    push_children(n, trace_bound, queue);
  }
}

}  // namespace

std::vector<GeodesicRecord> enumerate_geodesics(const SurfacePoint& pt, double length_cutoff,
                                                int threads) {
  const double bound = trace_bound_for_cutoff(length_cutoff);
  const FareyTriple root = reduced_triple(pt);

  std::vector<GeodesicRecord> records;
  std::unordered_set<Slope> seen;

  // Root slopes are the global minima; emit them in key order.
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(root.traces[a], root.slopes[a]) < std::pair(root.traces[b], root.slopes[b]);
  });
  for (int i : order) {
    if (root.traces[i] < bound && seen.insert(root.slopes[i]).second)
      records.push_back(record_of(root, i));
  }
  if (records.empty()) return records;

  NodeQueue queue;
  push_root_children(root, bound, queue);

  if (threads <= 1) {
    drain(queue, bound, seen, records);
    return records;
  }

  // Parallel mode: expand best-first until the frontier is wide enough, then
  // hand disjoint subtrees to workers.  Worker outputs are concatenated in
  // worker order, so the result is deterministic for a fixed thread count.
  const std::size_t want = 4 * static_cast<std::size_t>(threads);
  while (!queue.empty() && queue.size() < want) {
    Node n = queue.top();
    queue.pop();
    if (seen.insert(n.t.slopes[n.newest]).second) records.push_back(record_of(n.t, n.newest));
    push_children(n, bound, queue);
  }
  std::vector<Node> frontier;
  frontier.reserve(queue.size());
  while (!queue.empty()) {
    frontier.push_back(queue.top());
    queue.pop();
  }
  const int workers = std::min<int>(threads, static_cast<int>(frontier.size()));
  std::vector<std::future<std::vector<GeodesicRecord>>> futures;
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w]() {
      NodeQueue local;
      for (std::size_t i = w; i < frontier.size(); i += static_cast<std::size_t>(workers))
        local.push(frontier[i]);
      std::vector<GeodesicRecord> part;
      std::unordered_set<Slope> local_seen;  // subtrees are disjoint
      drain(local, bound, local_seen, part);
      return part;
    }));
  }
  for (auto& f : futures) {
    auto part = f.get();
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

std::vector<FareyTriple> enumerate_triples(const SurfacePoint& pt, double length_cutoff) {
  const double bound = trace_bound_for_cutoff(length_cutoff);
  const FareyTriple root = reduced_triple(pt);
  std::vector<FareyTriple> out;
  if (*std::max_element(root.traces.begin(), root.traces.end()) >= bound) return out;
  out.push_back(root);
  NodeQueue queue;
  push_root_children(root, bound, queue);
  while (!queue.empty()) {
    Node n = queue.top();
    queue.pop();
    out.push_back(n.t);
    push_children(n, bound, queue);
  }
  return out;
}

std::vector<std::pair<GeodesicRecord, GeodesicRecord>> farey_neighbor_pairs(
    const SurfacePoint& pt, double sum_length_cutoff) {
  std::vector<std::pair<GeodesicRecord, GeodesicRecord>> out;
  std::set<std::pair<Slope, Slope>> seen;
  for (const FareyTriple& t : enumerate_triples(pt, sum_length_cutoff)) {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      GeodesicRecord a = record_of(t, i), b = record_of(t, j);
      if (a.length + b.length >= sum_length_cutoff) continue;
      if (b.slope < a.slope) std::swap(a, b);
      if (seen.emplace(a.slope, b.slope).second) out.emplace_back(a, b);
    }
  }
  return out;
}

double trace_of_slope(const SurfacePoint& pt, Slope s) {
  s = normalize_slope(s.p, s.q);
  const double x1 = pt.seed.traces[0], x2 = pt.seed.traces[1], x3 = pt.seed.traces[2];
  if (s.q == 0) return x1;
  if (s.p == 0) return x2;
  std::int64_t target_p = s.p;
  // The reflection (p, q) -> (-p, q) maps the Farey tessellation to itself
  // fixing (1,0) and (0,1) and sends (1,1) to its Vieta companion, so the
  // negative fan is the positive fan of the companion seed.
  double tm = s.p > 0 ? x3 : x1 * x2 - x3;
  if (s.p < 0) target_p = -s.p;
  double tl = x2, tr = x1;
  std::int64_t pl = 0, ql = 1, pr = 1, qr = 0;
  while (true) {
    const std::int64_t pm = pl + pr, qm = ql + qr;
    if (pm == target_p && qm == s.q) return tm;
    if (!std::isfinite(tm)) throw std::overflow_error("trace_of_slope: trace overflow");
    // Descend toward target_p / s.q: companion of the new edge is the far
    // endpoint of the old interval.
    const __int128 side = static_cast<__int128>(target_p) * qm - static_cast<__int128>(s.q) * pm;
    if (side < 0) {
      const double nt = tl * tm - tr;
      tr = tm;
      tm = nt;
      pr = pm;
      qr = qm;
    } else {
      const double nt = tm * tr - tl;
      tl = tm;
      tm = nt;
      pl = pm;
      ql = qm;
    }
  }
}

namespace {

struct Mat2 {
  double a, b, c, d;

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  double trace() const { return a + d; }
  Mat2 inverse() const { return Mat2{d, -b, -c, a}; }  // det == 1
};

// A hyperbolic, B chosen so that tr B = x2, tr AB = x3, det B = 1.
struct FrickePair {
  Mat2 A, B;
};

FrickePair fricke_matrices(const SurfacePoint& pt) {
  const double x1 = pt.seed.traces[0], x2 = pt.seed.traces[1], x3 = pt.seed.traces[2];
  const double a = (x1 + std::sqrt(x1 * x1 - 4.0)) / 2.0;
  const double p = (x3 - x2 / a) / (a - 1.0 / a);
  const double q = x2 - p;
  return FrickePair{Mat2{a, 0.0, 0.0, 1.0 / a}, Mat2{p, p * q - 1.0, 1.0, q}};
}

}  // namespace

double fricke_oracle(const SurfacePoint& pt, Slope s) {
  s = normalize_slope(s.p, s.q);
  const auto [A, B] = fricke_matrices(pt);
  if (s.q == 0) return A.trace();
  if (s.p == 0) return B.trace();
  const Mat2 G = s.p > 0 ? A : A.inverse();
  const std::int64_t target_p = s.p > 0 ? s.p : -s.p;
  // Same Stern-Brocot descent as the trace recursion, but multiplying out
  // actual matrices: the word of a mediant is the concatenation of the words
  // of its Farey parents.
  Mat2 Ml = B, Mr = G;
  Mat2 Mm = Ml * Mr;
  std::int64_t pl = 0, ql = 1, pr = 1, qr = 0;
  while (true) {
    const std::int64_t pm = pl + pr, qm = ql + qr;
    if (pm == target_p && qm == s.q) return Mm.trace();
    if (!std::isfinite(Mm.a)) throw std::overflow_error("fricke_oracle: entry overflow");
    const __int128 side = static_cast<__int128>(target_p) * qm - static_cast<__int128>(s.q) * pm;
    if (side < 0) {
      Mr = Mm;
      Mm = Ml * Mm;
      pr = pm;
      qr = qm;
    } else {
      Ml = Mm;
      Mm = Mm * Mr;
      pl = pm;
      ql = qm;
    }
  }
}

double fricke_commutator_trace(const SurfacePoint& pt) {
  const auto [A, B] = fricke_matrices(pt);
  return (A * B * A.inverse() * B.inverse()).trace();
}

}  // namespace torus
