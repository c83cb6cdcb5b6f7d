#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/orbital.hpp"
#include "twoclosure/subgroups.hpp"

using namespace twoclosure;

namespace {

PermGroup grp(std::size_t n, std::initializer_list<std::string_view> gens) {
  std::vector<Permutation> perms;
  for (auto g : gens) perms.push_back(parse_cycles(g, n));
  return build_group(n, std::move(perms));
}

PermGroup random_group(std::size_t n, std::mt19937& rng) {
  std::vector<Permutation> gens;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) {
    if (rng() % 3 == 0) {
      gens.push_back(oracle::random_permutation(n, rng));
    } else {
      std::vector<Point> pts(n);
      for (std::size_t k = 0; k < n; ++k) pts[k] = static_cast<Point>(k);
      std::shuffle(pts.begin(), pts.end(), rng);
      const std::size_t len = std::min<std::size_t>(n, 2 + rng() % 3);
      std::vector<std::vector<Point>> cycles{{pts.begin(), pts.begin() + static_cast<long>(len)}};
      if (n >= len + 2 && rng() % 2 == 0) cycles.push_back({pts[len], pts[len + 1]});
      gens.push_back(Permutation::from_cycles(n, cycles));
    }
  }
  return PermGroup(n, std::move(gens));
}

oracle::ElementSet elements_of(const PermGroup& g) {
  auto v = g.list_elements();
  return {v.begin(), v.end()};
}

const auto kWorkedExample = [] { return grp(6, {"(1,2)(3,4)", "(3,4)(5,6)"}); };

}  // namespace

TEST(OrbitalPartition, Examples) {
  EXPECT_EQ(orbital_partition(PermGroup::symmetric(3)).rank(), 2U);
  EXPECT_EQ(orbital_partition(grp(4, {"(1,2,3,4)"})).rank(), 4U);
  EXPECT_EQ(orbital_partition(kWorkedExample()).rank(), 12U);
  EXPECT_EQ(orbital_partition(PermGroup::trivial(5)).rank(), 25U);
}

TEST(OrbitalPartition, RepresentativesAreLexLeast) {
  const auto p = orbital_partition(kWorkedExample());
  std::vector<bool> seen(p.rank(), false);
  for (Point a = 0; a < 6; ++a) {
    for (Point b = 0; b < 6; ++b) {
      const auto c = static_cast<std::size_t>(p.color(a, b));
      if (!seen[c]) {
        EXPECT_EQ(p.representatives()[c], (PointPair{a, b}));
      }
      seen[c] = true;
    }
  }
}

TEST(OrbitalPartition, TransportersMapRepresentatives) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto g = random_group(n, rng);
    const auto p = orbital_partition(g);
    for (Point a = 0; a < n; ++a) {
      for (Point b = 0; b < n; ++b) {
        const auto w = p.transporter(a, b);
        const auto [ra, rb] = p.representatives()[static_cast<std::size_t>(p.color(a, b))];
        EXPECT_EQ(w[ra], a);
        EXPECT_EQ(w[rb], b);
        EXPECT_TRUE(g.contains(w));
      }
    }
  }
}

TEST(OrbitalPartition, MatchesBruteForceColors) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto g = random_group(n, rng);
    EXPECT_EQ(orbital_partition(g).colors(), oracle::pair_orbits(n, elements_of(g)));
    EXPECT_EQ(orbital_partition(g).diagonal_rank(), g.orbits().size());
  }
}

TEST(TwoEquivalent, Examples) {
  const auto g = kWorkedExample();
  EXPECT_TRUE(two_equivalent(g, two_closure(g)));
  EXPECT_TRUE(two_equivalent(g, grp(6, {"(1,2)", "(3,4)", "(5,6)"})));
  EXPECT_FALSE(two_equivalent(g, PermGroup::trivial(6)));
  EXPECT_THROW(two_equivalent(g, PermGroup::trivial(5)), precondition_error);
}

TEST(IsInTwoClosure, Examples) {
  const auto g = kWorkedExample();
  auto r = is_in_two_closure(parse_cycles("(1,2)", 6), g);
  ASSERT_TRUE(r.member);
  ASSERT_TRUE(r.evidence.has_value());
  EXPECT_TRUE(r.evidence->verify(g));
  EXPECT_EQ(r.evidence->size(), 36U);
  EXPECT_FALSE(is_in_two_closure(parse_cycles("(1,3)", 6), g).member);
  EXPECT_TRUE(is_in_two_closure(Permutation::identity(6), g).member);
  EXPECT_THROW(is_in_two_closure(Permutation::identity(5), g), precondition_error);
}

TEST(TwoClosure, Examples) {
  const auto g = kWorkedExample();
  const auto c = two_closure(g);
  EXPECT_EQ(c.order(), 8);
  EXPECT_TRUE(same_group(c, grp(6, {"(1,2)", "(3,4)", "(5,6)"})));

  const auto v4 = grp(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  EXPECT_TRUE(same_group(two_closure(v4), v4));
  EXPECT_EQ(elements_of(two_closure(v4)), oracle::closure_by_scan(4, elements_of(v4)));
  EXPECT_EQ(two_closure(PermGroup::symmetric(3)).order(), 6);
}

TEST(TwoClosure, DegreeGuard) {
  EXPECT_THROW(two_closure(PermGroup::trivial(kClosureDegreeGuard + 1)), guard_exceeded);
  EXPECT_NO_THROW(two_closure(PermGroup::trivial(kClosureDegreeGuard)));
}

TEST(IsTwoClosedOn, Examples) {
  EXPECT_TRUE(is_two_closed_on(grp(4, {"(1,2,3,4)", "(1,3)"})).closed);
  auto r = is_two_closed_on(kWorkedExample());
  EXPECT_FALSE(r.closed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(to_cycle_string(*r.witness), "(1,2)");
  EXPECT_TRUE(is_two_closed_on(PermGroup::symmetric(5)).closed);
}

TEST(TwoClosureProperty, MatchesExhaustiveScan) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto g = random_group(n, rng);
    const auto brute = oracle::closure_by_scan(n, elements_of(g));
    const auto c = two_closure(g);
    ASSERT_EQ(c.order(), brute.size()) << "degree " << n;
    EXPECT_EQ(elements_of(c), brute);
  }
}

TEST(TwoClosureProperty, MembershipAgreesWithDefinition) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 5;
    const auto g = random_group(n, rng);
    const auto elems = elements_of(g);
    const auto partition = std::make_shared<const OrbitalPartition>(g);
    const auto c = two_closure(g);
    for (int k = 0; k < 40; ++k) {
      const auto theta = oracle::random_permutation(n, rng);
      const bool by_definition = oracle::in_closure_by_definition(theta, elems);
      const auto r = is_in_two_closure(theta, partition);
      EXPECT_EQ(r.member, by_definition);
      EXPECT_EQ(c.contains(theta), by_definition);
      if (r.member) {
        EXPECT_TRUE(r.evidence->verify(g));
      }
    }
  }
}

TEST(TwoClosureProperty, IdempotentAndEquivariant) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const auto g = random_group(n, rng);
    const auto c = two_closure(g);
    EXPECT_TRUE(is_subgroup(g, c));
    EXPECT_TRUE(same_group(two_closure(c), c));
    EXPECT_EQ(orbital_partition(c).colors(), orbital_partition(g).colors());
    const auto x = oracle::random_permutation(n, rng);
    EXPECT_TRUE(same_group(two_closure(conjugate(g, x)), conjugate(c, x)));
  }
}

TEST(TwoClosureProperty, AbelianStaysAbelian) {
  std::mt19937 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const auto g = random_group(n, rng);
    if (!is_abelian(g)) continue;
    ++checked;
    EXPECT_TRUE(is_abelian(two_closure(g)));
  }
  EXPECT_GE(checked, 20);
}

TEST(TwoClosure, RegularGroupsAreClosed) {
  // a regular group: rank = |G| and every color is a single permutation graph
  const auto q8 = grp(8, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"});
  ASSERT_EQ(q8.order(), 8);
  EXPECT_EQ(orbital_partition(q8).rank(), 8U);
  EXPECT_TRUE(is_two_closed_on(q8).closed);
}

TEST(TwoClosure, LargerDegreesStayFast) {
  // C2 x C2 x C2 regular on 8 points is not 2-closed? It is regular, hence closed.
  const auto e8 = grp(8, {"(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)"});
  EXPECT_TRUE(is_two_closed_on(e8).closed);
  // Disjoint union of three regular C2 x C2 blocks.
  const auto big = grp(24, {"(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(9,10)(11,12)", "(13,14)(15,16)(17,18)(19,20)",
                            "(21,22)(23,24)"});
  const auto c = two_closure(big);
  EXPECT_TRUE(is_subgroup(big, c));
  EXPECT_EQ(orbital_partition(c).colors(), orbital_partition(big).colors());
}
