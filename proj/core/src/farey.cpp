#include "torus/farey.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace torus {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("slope arithmetic overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("slope arithmetic overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("slope arithmetic overflow");
  return r;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == INT64_MIN) throw std::overflow_error("slope arithmetic overflow");
  return -a;
}

}  // namespace

MappingClass make_mapping_class(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (checked_sub(checked_mul(a, d), checked_mul(b, c)) != 1)
    throw std::domain_error("make_mapping_class: determinant must be 1");
  return MappingClass{a, b, c, d};
}

Slope normalize_slope(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw std::domain_error("normalize_slope: zero vector");
  if (p == INT64_MIN || q == INT64_MIN) throw std::overflow_error("normalize_slope: out of range");
  std::int64_t g = std::gcd(std::abs(p), std::abs(q));
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{p, q};
}

std::int64_t intersection_number(Slope s1, Slope s2) {
  const __int128 det = static_cast<__int128>(s1.p) * s2.q - static_cast<__int128>(s2.p) * s1.q;
  const __int128 mag = det < 0 ? -det : det;
  if (mag > INT64_MAX) throw std::overflow_error("intersection_number: out of range");
  return static_cast<std::int64_t>(mag);
}

bool is_farey_neighbor(Slope s1, Slope s2) { return intersection_number(s1, s2) == 1; }

FareyChildren farey_children(Slope s1, Slope s2) {
  if (!is_farey_neighbor(s1, s2))
    throw std::domain_error("farey_children: slopes are not Farey neighbors");
  return FareyChildren{
      normalize_slope(checked_add(s1.p, s2.p), checked_add(s1.q, s2.q)),
      normalize_slope(checked_sub(s1.p, s2.p), checked_sub(s1.q, s2.q)),
  };
}

Slope apply_mapping_class(const MappingClass& g, Slope s) {
  return normalize_slope(checked_add(checked_mul(g.a, s.p), checked_mul(g.b, s.q)),
                         checked_add(checked_mul(g.c, s.p), checked_mul(g.d, s.q)));
}

MappingClass change_of_basis_to(Slope mu) {
  mu = normalize_slope(mu.p, mu.q);
  // Extended Euclid: find (u, v) with p v - q u = 1, i.e. (mu, (u, v)) is a
  // positively oriented basis of the homology lattice.
  std::int64_t old_r = mu.p, r = mu.q;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - checked_mul(quot, r);
    old_r = r;
    r = tmp;
    tmp = old_s - checked_mul(quot, s);
    old_s = s;
    s = tmp;
    tmp = old_t - checked_mul(quot, t);
    old_t = t;
    t = tmp;
  }
  // old_r = +-gcd = +-1 and p*old_s + q*old_t = old_r.
  if (old_r == -1) {
    old_s = checked_neg(old_s);
    old_t = checked_neg(old_t);
  }
  const std::int64_t u = checked_neg(old_t);
  const std::int64_t v = old_s;
  // g = [mu | (u,v)]^-1 maps mu to (1,0) and (u,v) to (0,1).
  return make_mapping_class(v, checked_neg(u), checked_neg(mu.q), mu.p);
}

}  // namespace torus
