#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "twoclosure/permutation.hpp"

using namespace twoclosure;

namespace {

Permutation cyc(std::size_t n, std::string_view text) { return parse_cycles(text, n); }

}  // namespace

TEST(Permutation, ProductActsLeftToRight) {
  const auto g = cyc(3, "(1,2)");
  const auto h = cyc(3, "(2,3)");
  // 1 -> 2 under g, then 2 -> 3 under h
  EXPECT_EQ((g * h)[0], 2U);
  EXPECT_EQ(to_cycle_string(g * h), "(1,3,2)");
}

TEST(Permutation, InverseAndOrder) {
  const auto g = cyc(7, "(1,2,3)(4,5)");
  EXPECT_TRUE((g * g.inverse()).is_identity());
  EXPECT_EQ(g.order(), 6U);
  EXPECT_EQ(g.pow(-1), g.inverse());
  EXPECT_EQ(g.pow(6), Permutation::identity(7));
  EXPECT_EQ(g.pow(2), g * g);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), precondition_error);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3}), precondition_error);
}

TEST(Permutation, CanonicalCycleString) {
  EXPECT_EQ(to_cycle_string(Permutation::identity(4)), "()");
  EXPECT_EQ(to_cycle_string(cyc(6, "(5,6)(3,1,2)")), "(1,2,3)(5,6)");
  EXPECT_EQ(to_cycle_string(cyc(12, "(10,12,11)")), "(10,12,11)");
}

TEST(Permutation, ParseErrorsCarryColumn) {
  auto column_of = [](std::string_view text, std::size_t n) -> std::size_t {
    try {
      parse_cycles(text, n);
    } catch (const parse_error& e) {
      return e.column();
    }
    return 0;
  };
  EXPECT_EQ(column_of("(1,2,5)", 4), 6U);   // point exceeds degree
  EXPECT_EQ(column_of("(1,2)(2,3)", 4), 7U);  // repeated point
  EXPECT_EQ(column_of("(1,2", 4), 1U);      // unbalanced
  EXPECT_EQ(column_of("1,2)", 4), 1U);      // missing '('
  EXPECT_EQ(column_of("(0,1)", 4), 2U);
  EXPECT_EQ(column_of("(1;2)", 4), 3U);
  EXPECT_NO_THROW(parse_cycles("()", 3));
  EXPECT_NO_THROW(parse_cycles(" (1, 2) (3,4) ", 4));
}

TEST(Permutation, CommutatorConvention) {
  const auto a = cyc(4, "(1,2,3,4)");
  const auto b = cyc(4, "(1,3)");
  EXPECT_EQ(commutator(a, b), a.inverse() * b.inverse() * a * b);
  EXPECT_TRUE(commutator(a, a).is_identity());
}

TEST(PermutationProperty, PrintThenParseRoundTrips) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    const auto g = oracle::random_permutation(n, rng);
    EXPECT_EQ(parse_cycles(to_cycle_string(g), n), g);
  }
}

TEST(PermutationProperty, GroupLaws) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto a = oracle::random_permutation(n, rng);
    const auto b = oracle::random_permutation(n, rng);
    const auto c = oracle::random_permutation(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
    EXPECT_EQ(a.conjugate_by(b), b.inverse() * a * b);
    EXPECT_TRUE(a.pow(static_cast<std::int64_t>(a.order())).is_identity());
  }
}
