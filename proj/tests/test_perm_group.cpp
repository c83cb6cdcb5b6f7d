#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"

using namespace twoclosure;

namespace {

PermGroup grp(std::size_t n, std::initializer_list<std::string_view> gens) {
  std::vector<Permutation> perms;
  for (auto g : gens) perms.push_back(parse_cycles(g, n));
  return build_group(n, std::move(perms));
}

std::vector<Permutation> random_gens(std::size_t n, std::mt19937& rng) {
  std::vector<Permutation> gens;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) {
    if (rng() % 2 == 0) {
      gens.push_back(oracle::random_permutation(n, rng));
    } else {
      // a sparse product of one or two short cycles
      std::vector<Point> pts(n);
      for (std::size_t k = 0; k < n; ++k) pts[k] = static_cast<Point>(k);
      std::shuffle(pts.begin(), pts.end(), rng);
      std::vector<std::vector<Point>> cycles;
      std::size_t at = 0;
      for (int c = 0; c < 2 && at + 2 <= n; ++c) {
        const std::size_t len = 2 + rng() % std::min<std::size_t>(3, n - at - 1);
        cycles.emplace_back(pts.begin() + static_cast<long>(at), pts.begin() + static_cast<long>(at + len));
        at += len;
      }
      gens.push_back(Permutation::from_cycles(n, cycles));
    }
  }
  return gens;
}

oracle::ElementSet as_set(const std::vector<Permutation>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(BuildGroup, Examples) {
  EXPECT_EQ(grp(6, {"(1,2)(3,4)", "(3,4)(5,6)"}).order(), 4);
  EXPECT_EQ(grp(5, {}).order(), 1);
  EXPECT_EQ(grp(4, {"(1,2,3,4)"}).order(), 4);
  EXPECT_EQ(PermGroup::symmetric(6).order(), 720);
}

TEST(BuildGroup, DegreeMismatchThrows) {
  EXPECT_THROW(PermGroup(4, {Permutation::identity(5)}), precondition_error);
  const auto g = grp(4, {"(1,2)"});
  EXPECT_THROW((void)g.contains(Permutation::identity(3)), precondition_error);
}

TEST(BuildGroup, DeterministicChains) {
  const auto a = grp(8, {"(1,2,3,4,5,6,7,8)", "(1,3)(4,8)(5,7)"});
  const auto b = grp(8, {"(1,2,3,4,5,6,7,8)", "(1,3)(4,8)(5,7)"});
  EXPECT_EQ(a.canonical_generators(), b.canonical_generators());
  EXPECT_EQ(a.chain().base(), b.chain().base());
  const auto base = a.chain().base();
  EXPECT_TRUE(std::is_sorted(base.begin(), base.end()));
}

TEST(OrderAndMembership, Examples) {
  const auto g = grp(6, {"(1,2)(3,4)", "(3,4)(5,6)"});
  auto r = order_and_membership(g, parse_cycles("(1,2)", 6));
  EXPECT_EQ(r.order, 4);
  EXPECT_FALSE(r.contains);
  EXPECT_TRUE(order_and_membership(g, Permutation::identity(6)).contains);
  const auto c4 = grp(4, {"(1,2,3,4)"});
  EXPECT_TRUE(order_and_membership(c4, parse_cycles("(1,3)(2,4)", 4)).contains);
}

TEST(OrbitsAndStabilizer, Examples) {
  const auto c4 = grp(4, {"(1,2,3,4)"});
  auto r = orbits_and_stabilizer(c4, 0);
  EXPECT_EQ(r.orbit.size(), 4U);
  EXPECT_TRUE(r.stabilizer.is_trivial());

  const auto v = grp(6, {"(1,2)(3,4)", "(3,4)(5,6)"});
  r = orbits_and_stabilizer(v, 0);
  EXPECT_EQ(r.orbit, (std::vector<Point>{0, 1}));
  EXPECT_EQ(r.stabilizer.order(), 2);

  r = orbits_and_stabilizer(PermGroup::symmetric(3), 2);
  EXPECT_EQ(r.orbit.size(), 3U);
  EXPECT_EQ(r.stabilizer.order(), 2);
  EXPECT_THROW(orbits_and_stabilizer(c4, 4), precondition_error);
}

TEST(PermGroupProperty, ChainAgreesWithEnumeration) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto gens = random_gens(n, rng);
    const PermGroup g(n, gens);
    const auto brute = oracle::enumerate(n, gens);
    ASSERT_EQ(g.order(), brute.size()) << "degree " << n;
    // membership agrees on the group and on random outsiders
    for (int k = 0; k < 10; ++k) {
      const auto x = oracle::random_permutation(n, rng);
      EXPECT_EQ(g.contains(x), brute.count(x) == 1);
    }
    if (brute.size() <= 5040) {
      EXPECT_EQ(as_set(g.list_elements()), brute);
    }
    // orbit-stabilizer at every point
    for (Point a = 0; a < n; ++a) {
      const auto r = orbits_and_stabilizer(g, a);
      EXPECT_EQ(r.stabilizer.order() * r.orbit.size(), g.order());
      for (const auto& s : r.stabilizer.generators()) EXPECT_EQ(s[a], a);
    }
  }
}

TEST(PermGroupProperty, PrefixStabilizerFixesPrefix) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const PermGroup g(n, random_gens(n, rng));
    const auto elems = oracle::enumerate(n, g.generators());
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t expected = 0;
      for (const auto& x : elems) {
        bool fixes = true;
        for (Point p = 0; p < k; ++p) fixes = fixes && x[p] == p;
        expected += fixes ? 1 : 0;
      }
      EXPECT_EQ(g.prefix_stabilizer(k).order(), expected);
    }
  }
}

TEST(SubgroupOperators, DihedralEight) {
  const auto d8 = grp(4, {"(1,2,3,4)", "(1,3)"});
  const auto h = grp(4, {"(1,3)"});
  const auto ops = subgroup_operators(d8, h);
  EXPECT_EQ(ops.center.order(), 2);
  EXPECT_TRUE(ops.center.contains(parse_cycles("(1,3)(2,4)", 4)));
  EXPECT_TRUE(ops.core_of_sub.is_trivial());
  EXPECT_TRUE(same_group(centralizer(d8, d8), ops.center));
  EXPECT_THROW(subgroup_operators(d8, grp(4, {"(1,2)"})), precondition_error);
}

TEST(SubgroupOperators, AgreeWithBruteForce) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const PermGroup g(n, random_gens(n, rng));
    const auto elems = oracle::enumerate(n, g.generators());
    // a random cyclic subgroup
    auto it = elems.begin();
    std::advance(it, static_cast<long>(rng() % elems.size()));
    const PermGroup h(n, {*it});
    const auto ops = subgroup_operators(g, h);
    EXPECT_EQ(as_set(ops.center.list_elements()), oracle::centre(elems));
    const auto core_brute = oracle::conjugates_intersection(elems, oracle::enumerate(n, {*it}));
    EXPECT_EQ(as_set(ops.core_of_sub.list_elements()), core_brute);
    EXPECT_TRUE(is_normal(g, ops.core_of_sub));
    EXPECT_TRUE(is_subgroup(ops.core_of_sub, h));
  }
}

TEST(SubgroupOperators, EnumerationGuard) {
  EXPECT_THROW(center(PermGroup::symmetric(8)), guard_exceeded);
  EXPECT_NO_THROW(center(PermGroup::symmetric(7)));
}

TEST(Sylow, Examples) {
  auto c6 = sylow_decomposition(grp(6, {"(1,2,3,4,5,6)"}));
  EXPECT_TRUE(c6.nilpotent);
  EXPECT_EQ(c6.sylows.at(2).order(), 2);
  EXPECT_EQ(c6.sylows.at(3).order(), 3);

  EXPECT_FALSE(sylow_decomposition(PermGroup::symmetric(3)).nilpotent);

  // Q8 regular on 8 points plus C3 on 3 more
  const auto q8c3 = grp(11, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)", "(9,10,11)"});
  ASSERT_EQ(q8c3.order(), 24);
  auto d = sylow_decomposition(q8c3);
  EXPECT_TRUE(d.nilpotent);
  EXPECT_EQ(d.sylows.at(2).order(), 8);
  EXPECT_EQ(d.sylows.at(3).order(), 3);
}

TEST(Sylow, OrdersAreFullPrimePowers) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const PermGroup g(n, random_gens(n, rng));
    const auto order = g.order_u64();
    for (auto p : prime_divisors(order)) {
      EXPECT_EQ(sylow_subgroup(g, p).order(), prime_part(order, p));
    }
  }
}
