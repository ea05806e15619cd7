#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace torus {

/// A primitive homology class on the one-holed torus, i.e. the slope of a
/// simple closed curve.  Slopes are unoriented ((p, q) and (-p, -q) label the
/// same curve); the normalized representative has q > 0, or q == 0 and p == 1.
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  friend constexpr bool operator==(const Slope&, const Slope&) = default;
  friend constexpr auto operator<=>(const Slope&, const Slope&) = default;
};

/// Orientation-preserving mapping class, acting on slopes as SL(2, Z).
struct MappingClass {
  std::int64_t a = 1, b = 0;
  std::int64_t c = 0, d = 1;
};

/// Validates ad - bc == 1 (orientation preserving only).
MappingClass make_mapping_class(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

/// Unique normalized primitive representative of the line through (p, q):
/// divides out the gcd and fixes the sign convention.
Slope normalize_slope(std::int64_t p, std::int64_t q);

/// Geometric intersection number |p1 q2 - p2 q1|.  Symmetric; zero iff the
/// slopes coincide.
std::int64_t intersection_number(Slope s1, Slope s2);

/// True iff the two curves meet exactly once (intersection number 1).
bool is_farey_neighbor(Slope s1, Slope s2);

struct FareyChildren {
  Slope mediant;     ///< normalize(s1 + s2)
  Slope difference;  ///< normalize(s1 - s2)
};

/// The two companion curves completing a Farey edge to a triangle on either
/// side.  Requires is_farey_neighbor(s1, s2).
FareyChildren farey_children(Slope s1, Slope s2);

Slope apply_mapping_class(const MappingClass& g, Slope s);

/// Some g in SL(2, Z) with g(mu) = (1, 0); the second basis vector g^-1(0, 1)
/// is a curve meeting mu exactly once.
MappingClass change_of_basis_to(Slope mu);

}  // namespace torus

template <>
struct std::hash<torus::Slope> {
  std::size_t operator()(const torus::Slope& s) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(s.p) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(s.q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};
