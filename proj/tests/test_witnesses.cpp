#include <gtest/gtest.h>

#include "oracle.hpp"
#include "twoclosure/catalog.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/witnesses.hpp"

using namespace twoclosure;

namespace {

oracle::ElementSet elements_of(const PermGroup& g) {
  auto v = g.list_elements();
  return {v.begin(), v.end()};
}

// Independent of the library's evidence: scan all elements for each pair.
void expect_definitionally_valid(const WitnessCertificate& c) {
  const auto elems = elements_of(c.group);
  EXPECT_EQ(elems.count(c.witness), 0u);
  EXPECT_TRUE(oracle::in_closure_by_definition(c.witness, elems));
  const auto check = c.validate();
  EXPECT_TRUE(check.valid) << check.reason;
  EXPECT_EQ(c.space.size(), c.degree());
}

void expect_engine_growth(const WitnessCertificate& c) {
  ASSERT_LE(c.degree(), kClosureDegreeGuard);
  const auto closure = two_closure(c.group);
  EXPECT_GT(closure.order(), c.group.order());
  EXPECT_TRUE(closure.contains(c.witness));
}

PermGroup normal_v4_of_d8(const PermGroup& d8) {
  // {e, r^2, s, r^2 s} with s a reflection through vertices
  return PermGroup(d8.degree(), {parse_cycles("(1,3)(2,4)", 4), parse_cycles("(2,4)", 4)});
}

}  // namespace

TEST(Abp, BinaryTwoFactors) {
  const auto a = abp_witness(2, {1, 1});
  const auto& c = a.certificate;
  EXPECT_EQ(c.construction, Construction::Abp);
  EXPECT_EQ(c.degree(), 6u);
  EXPECT_EQ(c.group.order(), 4);
  EXPECT_EQ(to_cycle_string(a.generators[0]), "(1,2)(5,6)");
  EXPECT_EQ(to_cycle_string(a.generators[1]), "(1,2)(3,4)");
  EXPECT_EQ(to_cycle_string(c.witness), "(5,6)");
  expect_definitionally_valid(c);
  const auto closure = two_closure(c.group);
  EXPECT_EQ(closure.order(), 8);
  EXPECT_EQ(elements_of(closure), oracle::closure_by_scan(6, elements_of(c.group)));
}

TEST(Abp, TernaryTwoFactors) {
  const auto a = abp_witness(3, {1, 1});
  const auto& c = a.certificate;
  EXPECT_EQ(c.degree(), 9u);
  EXPECT_EQ(c.group.order(), 9);
  EXPECT_EQ(c.witness.order(), 3u);
  expect_definitionally_valid(c);
  const auto closure = two_closure(c.group);
  EXPECT_GE(closure.order(), 27);
  EXPECT_TRUE(is_abelian(closure));
}

TEST(Abp, LargerExponents) {
  for (auto [p, ks] : std::vector<std::pair<std::uint64_t, std::vector<unsigned>>>{
           {2, {1, 2}}, {2, {1, 1, 1}}, {2, {2, 2}}, {3, {1, 2}}, {5, {1, 1}}}) {
    const auto a = abp_witness(p, ks);
    expect_definitionally_valid(a.certificate);
    const auto closure = two_closure(a.certificate.group);
    EXPECT_GE(closure.order(), Order(p) * a.certificate.group.order());
    EXPECT_TRUE(is_abelian(closure));
  }
}

TEST(Abp, Preconditions) {
  EXPECT_THROW(abp_witness(2, {1}), precondition_error);
  EXPECT_THROW(abp_witness(4, {1, 1}), precondition_error);
  EXPECT_THROW(abp_witness(2, {2, 1}), precondition_error);
}

TEST(TwoGroup, DihedralEight) {
  const auto d8 = realize("D8");
  const auto c = twogroup_witness(d8, normal_v4_of_d8(d8));
  EXPECT_EQ(c.construction, Construction::TwoGroup);
  EXPECT_EQ(c.degree(), 8u);
  EXPECT_EQ(c.parameters["sheets"], 1);
  expect_definitionally_valid(c);
  expect_engine_growth(c);
  EXPECT_GE(two_closure(c.group).order(), 16);
  // the representation is an isomorphism from the input group
  ASSERT_TRUE(c.representation.has_value());
  EXPECT_TRUE(c.representation->faithful());
  EXPECT_TRUE(same_group(c.representation->image(), c.group));
}

TEST(TwoGroup, FinderOnLargerGroups) {
  for (const char* spec : {"D8", "C2xD8", "C4xD8"}) {
    const auto g = realize(spec);
    const auto c = twogroup_witness(g);
    expect_definitionally_valid(c);
    EXPECT_EQ(c.group.order(), g.order()) << spec;
    if (c.degree() <= kClosureDegreeGuard) expect_engine_growth(c);
  }
}

TEST(TwoGroup, Preconditions) {
  const auto g = realize("Q8xC2");
  EXPECT_THROW(twogroup_witness(g, center(g)), precondition_error);
  EXPECT_THROW(twogroup_witness(realize("C8")), precondition_error);
  EXPECT_THROW(twogroup_witness(realize("Q8")), precondition_error);
  // dihedral and semidihedral groups of order 16 have no normal Klein four-group
  EXPECT_THROW(twogroup_witness(realize("D16")), precondition_error);
  EXPECT_THROW(twogroup_witness(realize("SD16")), precondition_error);
  EXPECT_THROW(twogroup_witness(realize("E27")), precondition_error);
}

TEST(Podd, ExtraspecialTwentySeven) {
  const auto g = realize("E27");
  const auto c = podd_witness(g);
  EXPECT_EQ(c.construction, Construction::Podd);
  EXPECT_EQ(c.degree(), 9u);
  expect_definitionally_valid(c);
  expect_engine_growth(c);
  // the solved exponents satisfy their defining commutator identity
  const auto& rep = *c.representation;
  const auto a = parse_cycles(c.parameters["a"].get<std::string>(), g.degree());
  const auto b = parse_cycles(c.parameters["b"].get<std::string>(), g.degree());
  const auto t = parse_cycles(c.parameters["t"].get<std::string>(), g.degree());
  ASSERT_TRUE(g.contains(a) && g.contains(b) && g.contains(t));
  for (std::int64_t i = 0; i < 3; ++i) {
    if (i == 2) continue;
    const auto k = c.parameters["k"][i].get<std::int64_t>();
    EXPECT_EQ(commutator(t.pow(i - 2), b.pow(-k)), a);
  }
  // the witness multiplies some cosets by the central a and fixes the rest
  ASSERT_TRUE(rep.faithful());
  const auto& ra = rep(a);
  std::size_t moved = 0;
  for (Point u = 0; u < c.degree(); ++u) {
    EXPECT_TRUE(c.witness[u] == u || c.witness[u] == ra[u]);
    moved += c.witness[u] != u ? 1 : 0;
  }
  EXPECT_EQ(moved, 3u);
}

TEST(Podd, Preconditions) {
  EXPECT_THROW(podd_witness(realize("C3xC3")), precondition_error);
  const auto d8 = realize("D8");
  EXPECT_THROW(podd_witness(d8, normal_v4_of_d8(d8)), precondition_error);
}

TEST(Semidirect, DihedralEight) {
  const auto d8 = realize("D8");
  const PermGroup m(4, {parse_cycles("(1,2,3,4)", 4)});
  const PermGroup h(4, {parse_cycles("(2,4)", 4)});
  const auto c = semidirect_witness(d8, m, h);
  EXPECT_EQ(c.construction, Construction::Semidirect);
  EXPECT_EQ(c.degree(), 6u);
  EXPECT_EQ(c.group.order(), 8);
  EXPECT_EQ(to_cycle_string(c.witness), "(5,6)");
  expect_definitionally_valid(c);
  expect_engine_growth(c);
}

TEST(Semidirect, Semidihedral) {
  const auto g = realize("SD16");
  const PermGroup m(8, {parse_cycles("(1,2,3,4,5,6,7,8)", 8)});
  // x -> 3x fixes 0 and 4
  const PermGroup h(8, {g.generators()[1]});
  ASSERT_EQ(h.order(), 2);
  const auto c = semidirect_witness(g, m, h);
  EXPECT_EQ(c.degree(), 10u);
  EXPECT_EQ(c.group.order(), 16);
  expect_definitionally_valid(c);
  expect_engine_growth(c);
}

TEST(Semidirect, Preconditions) {
  const auto c6 = realize("C6");
  const PermGroup m(6, {parse_cycles("(1,3,5)(2,4,6)", 6)});
  const PermGroup h(6, {parse_cycles("(1,4)(2,5)(3,6)", 6)});
  EXPECT_THROW(semidirect_witness(c6, m, h), precondition_error);
  const auto s3 = PermGroup(3, {parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)});
  EXPECT_THROW(semidirect_witness(s3, PermGroup(3, {parse_cycles("(1,2,3)", 3)}), PermGroup(3, {parse_cycles("(1,2)", 3)})),
               precondition_error);
}

TEST(Center, QuaternionTimesTwo) {
  const auto g = realize("Q8xC2");
  const auto c = center_witness(g);
  EXPECT_EQ(c.construction, Construction::Center);
  EXPECT_EQ(c.degree(), 24u);
  EXPECT_EQ(c.evidence.size(), 576u);
  EXPECT_EQ(c.group.order(), 16);
  expect_definitionally_valid(c);
  expect_engine_growth(c);
}

TEST(Center, KleinFourReducesToAbp) {
  const auto c = center_witness(realize("C2xC2"));
  EXPECT_EQ(c.degree(), 6u);
  EXPECT_EQ(to_cycle_string(c.witness), "(5,6)");
  expect_definitionally_valid(c);
}

TEST(Center, Preconditions) {
  EXPECT_THROW(center_witness(realize("Q8")), precondition_error);
  EXPECT_THROW(center_witness(realize("D8")), precondition_error);
}

TEST(Lift, OddFactorAppendedRegularly) {
  const auto g = realize("C2xQ8xC3");
  const auto p2 = sylow_subgroup(g, 2);
  const auto base = center_witness(p2);
  EXPECT_EQ(base.degree(), 24u);
  const auto lifted = lift_certificate(base, g, p2, 2);
  ASSERT_TRUE(lifted.lift);
  EXPECT_EQ(lifted.lift->degree(), 27u);
  EXPECT_EQ(lifted.lift->group.order(), 48);
  EXPECT_TRUE(lifted.validate().valid);
  expect_definitionally_valid(*lifted.lift);
}

TEST(Certificate, TamperedCertificatesFail) {
  auto c = abp_witness(2, {1, 1}).certificate;
  auto bad = c;
  bad.witness = c.group.generators().front();
  EXPECT_FALSE(bad.validate().valid);
  auto wrong_group = c;
  wrong_group.group = PermGroup(6, {parse_cycles("(1,2)(5,6)", 6)});
  EXPECT_FALSE(wrong_group.validate().valid);
}
