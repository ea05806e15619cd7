#include <doctest.h>

#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "torus/farey.hpp"

using namespace torus;

TEST_CASE("normalize_slope picks the unique primitive representative") {
  CHECK(normalize_slope(2, 4) == Slope{1, 2});
  CHECK(normalize_slope(-1, -2) == Slope{1, 2});
  CHECK(normalize_slope(-3, 0) == Slope{1, 0});
  CHECK(normalize_slope(1, -1) == Slope{-1, 1});
  CHECK(normalize_slope(0, -7) == Slope{0, 1});
  CHECK_THROWS_AS(normalize_slope(0, 0), std::domain_error);
}

TEST_CASE("intersection numbers") {
  CHECK(intersection_number(Slope{1, 0}, Slope{0, 1}) == 1);
  CHECK(intersection_number(Slope{1, 0}, Slope{1, 2}) == 2);
  CHECK(intersection_number(Slope{2, 3}, Slope{2, 3}) == 0);
  // (1,-1) and (1,1) are genuinely different curves
  CHECK(intersection_number(normalize_slope(1, -1), Slope{1, 1}) == 2);

  CHECK(is_farey_neighbor(Slope{1, 0}, Slope{0, 1}));
  CHECK_FALSE(is_farey_neighbor(Slope{1, 0}, Slope{1, 2}));
  CHECK(is_farey_neighbor(Slope{2, 3}, Slope{1, 1}));
}

TEST_CASE("farey children") {
  const auto base = farey_children(Slope{1, 0}, Slope{0, 1});
  CHECK(base.mediant == Slope{1, 1});
  CHECK(base.difference == Slope{-1, 1});

  const auto c1 = farey_children(Slope{1, 1}, Slope{0, 1});
  CHECK(c1.mediant == Slope{1, 2});
  CHECK(c1.difference == Slope{1, 0});

  const auto c2 = farey_children(Slope{2, 1}, Slope{1, 1});
  CHECK(c2.mediant == Slope{3, 2});
  CHECK(c2.difference == Slope{1, 0});

  CHECK_THROWS_AS(farey_children(Slope{1, 0}, Slope{1, 2}), std::domain_error);
}

TEST_CASE("mapping class action on slopes") {
  const Slope s{3, 5};
  CHECK(apply_mapping_class(MappingClass{}, s) == s);
  CHECK(apply_mapping_class(make_mapping_class(1, 1, 0, 1), Slope{0, 1}) == Slope{1, 1});

  // order-4 rotation acts with order 2 on unoriented slopes
  const MappingClass rot = make_mapping_class(0, -1, 1, 0);
  const Slope once = apply_mapping_class(rot, s);
  CHECK(apply_mapping_class(rot, once) == s);

  CHECK_THROWS_AS(make_mapping_class(1, 0, 0, -1), std::domain_error);
  CHECK_THROWS_AS(make_mapping_class(2, 0, 0, 1), std::domain_error);
}

namespace {

MappingClass random_mapping_class(std::mt19937_64& rng) {
  // word in the two shears; stays in SL(2, Z)
  MappingClass g;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::int64_t> power(-3, 3);
  for (int i = 0; i < 6; ++i) {
    const std::int64_t n = power(rng);
    const MappingClass shear =
        coin(rng) ? MappingClass{1, n, 0, 1} : MappingClass{1, 0, n, 1};
    g = MappingClass{g.a * shear.a + g.b * shear.c, g.a * shear.b + g.b * shear.d,
                     g.c * shear.a + g.d * shear.c, g.c * shear.b + g.d * shear.d};
  }
  return make_mapping_class(g.a, g.b, g.c, g.d);
}

Slope random_slope(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> draw(-40, 40);
  while (true) {
    const std::int64_t p = draw(rng), q = draw(rng);
    if (p == 0 && q == 0) continue;
    return normalize_slope(p, q);
  }
}

}  // namespace

TEST_CASE("intersection number is symmetric and mapping-class invariant") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    const Slope s1 = random_slope(rng), s2 = random_slope(rng);
    CHECK(intersection_number(s1, s2) == intersection_number(s2, s1));
    const MappingClass g = random_mapping_class(rng);
    CHECK(intersection_number(apply_mapping_class(g, s1), apply_mapping_class(g, s2)) ==
          intersection_number(s1, s2));
  }
}

TEST_CASE("farey children are neighbors of both parents") {
  std::mt19937_64 rng(7);
  int found = 0;
  while (found < 100) {
    const Slope s1 = random_slope(rng), s2 = random_slope(rng);
    if (!is_farey_neighbor(s1, s2)) continue;
    ++found;
    const auto c = farey_children(s1, s2);
    CHECK(intersection_number(c.mediant, s1) == 1);
    CHECK(intersection_number(c.mediant, s2) == 1);
    CHECK(intersection_number(c.difference, s1) == 1);
    CHECK(intersection_number(c.difference, s2) == 1);
  }
}

TEST_CASE("children of the base triangle reach every slope up to height 50") {
  constexpr std::int64_t kBound = 50;
  std::set<Slope> reached;
  std::set<std::array<Slope, 3>> visited;
  std::queue<std::array<Slope, 3>> queue;
  queue.push({Slope{1, 0}, Slope{0, 1}, Slope{1, 1}});
  const auto in_range = [](Slope s) {
    return std::abs(s.p) <= kBound && s.q <= kBound;
  };
  while (!queue.empty()) {
    auto tri = queue.front();
    queue.pop();
    if (!visited.insert(tri).second) continue;
    for (const Slope& s : tri) reached.insert(s);
    for (int i = 0; i < 3; ++i) {
      const auto c = farey_children(tri[(i + 1) % 3], tri[(i + 2) % 3]);
      const Slope other = tri[i] == c.mediant ? c.difference : c.mediant;
      if (!in_range(other)) continue;
      auto next = tri;
      next[i] = other;
      std::sort(next.begin(), next.end());
      queue.push(next);
    }
  }

  std::set<Slope> expected;
  expected.insert(Slope{1, 0});
  for (std::int64_t p = -kBound; p <= kBound; ++p)
    for (std::int64_t q = 1; q <= kBound; ++q)
      if (std::gcd(std::abs(p), q) == 1) expected.insert(Slope{p, q});

  CHECK(reached == expected);
}

TEST_CASE("change_of_basis_to sends mu to (1,0)") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Slope mu = random_slope(rng);
    const MappingClass g = change_of_basis_to(mu);
    CHECK(apply_mapping_class(g, mu) == Slope{1, 0});
  }
}
