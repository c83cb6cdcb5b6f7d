#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "twoclosure/catalog.hpp"
#include "twoclosure/classifier.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/constructions.hpp"
#include "twoclosure/errors.hpp"
#include "twoclosure/orbital.hpp"
#include "twoclosure/witnesses.hpp"

// Verification suites behind `verify` and the acceptance binary. Each check
// counts cases and failures; the first few failures are kept as text.

namespace twoclosure {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const noexcept { return failures == 0 && cases > 0; }
};

struct SuiteOptions {
  std::size_t max_degree = 7;
  std::uint64_t seed = 1;
  std::size_t random_groups = 200;
};

inline constexpr std::size_t kSuiteMaxDegree = 10;

namespace detail {

class Tally {
 public:
  explicit Tally(std::string name) : start_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++result_.cases;
    if (ok) return;
    ++result_.failures;
    if (result_.notes.size() < 8) result_.notes.push_back(what);
  }

  /// Runs `body`, turning any exception into one failed case.
  void guarded(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }

  CheckResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

 private:
  CheckResult result_;
  std::chrono::steady_clock::time_point start_;
};

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), Point{0});
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

/// One to three generators, mixing uniform permutations with short cycles so
/// that small intransitive groups show up as often as large ones.
inline PermGroup random_group(std::size_t n, std::mt19937_64& rng) {
  std::vector<Permutation> gens;
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    if (rng() % 3 == 0 || n < 2) {
      gens.push_back(random_permutation(n, rng));
      continue;
    }
    std::vector<Point> pts(n);
    std::iota(pts.begin(), pts.end(), Point{0});
    std::shuffle(pts.begin(), pts.end(), rng);
    const std::size_t len = std::min<std::size_t>(n, 2 + rng() % 3);
    std::vector<std::vector<Point>> cycles{{pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(len)}};
    if (n >= len + 2 && rng() % 2 == 0) cycles.push_back({pts[len], pts[len + 1]});
    gens.push_back(Permutation::from_cycles(n, cycles));
  }
  return PermGroup(n, std::move(gens));
}

inline PermGroup group_of(std::size_t n, std::initializer_list<const char*> gens) {
  std::vector<Permutation> perms;
  for (const char* g : gens) perms.push_back(parse_cycles(g, n));
  return PermGroup(n, std::move(perms));
}

inline bool all_commute(const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (!x.commutes_with(y)) return false;
    }
  }
  return true;
}

inline std::vector<Permutation> strong_generators(const PermGroup& g) { return g.chain().strong_generators(); }

/// Every permutation of Sym(n) that preserves the coloring, by listing Sym(n).
inline std::size_t count_color_preserving(const OrbitalPartition& partition, const PermGroup& closure, bool& inside) {
  std::vector<Point> v(partition.degree());
  std::iota(v.begin(), v.end(), Point{0});
  std::size_t count = 0;
  inside = true;
  do {
    const Permutation x(v);
    if (!preserves_colors(x, partition)) continue;
    ++count;
    inside = inside && closure.contains(x);
  } while (std::next_permutation(v.begin(), v.end()));
  return count;
}

inline void closure_axioms(Tally& t, const std::string& label, const PermGroup& g, std::mt19937_64& rng) {
  const auto closure = two_closure(g);
  bool contains = true;
  for (const auto& x : g.generators()) contains = contains && closure.contains(x);
  t.expect(contains, label + ": G is not inside its closure");
  t.expect(two_closure(closure).order() == closure.order(), label + ": closure is not idempotent");
  t.expect(two_equivalent(g, closure), label + ": closure changes the orbital partition");
  for (int k = 0; k < 5; ++k) {
    const auto x = random_permutation(g.degree(), rng);
    t.expect(same_group(two_closure(conjugate(g, x)), conjugate(closure, x)),
             label + ": closure does not commute with conjugation");
  }
  if (g.degree() <= 6) {
    bool inside = false;
    const auto count = count_color_preserving(OrbitalPartition(g), closure, inside);
    t.expect(inside && Order(count) == closure.order(), label + ": closure is not the full color automorphism group");
  }
}

inline std::vector<std::string> positive_entries() {
  std::vector<std::string> out;
  for (int n = 1; n <= 30; ++n) out.push_back("C" + std::to_string(n));
  for (const char* s : {"Q8", "Q16", "Q32", "Q8xC3", "Q8xC5", "Q16xC3", "Q16xC9"}) out.emplace_back(s);
  return out;
}

inline std::vector<std::string> negative_entries() {
  return {"C2xC2", "C2xC4", "C3xC3", "C2xC2xC2", "D8", "D16", "SD16", "Q8xC2", "Q16xC2", "Q8xC3xC3", "E27"};
}

inline void certificate_checks(Tally& t, const std::string& label, const WitnessCertificate& c) {
  const auto check = c.validate();
  t.expect(check.valid, label + ": " + check.reason);
  if (c.lift) certificate_checks(t, label + " lift", *c.lift);
}

}  // namespace detail

/// The worked example on six points and its two cyclic subgroups.
inline CheckResult check_worked_example() {
  detail::Tally t("worked example");
  t.guarded("worked example", [&] {
    const auto g = detail::group_of(6, {"(1,2)(3,4)", "(3,4)(5,6)"});
    const auto expected = detail::group_of(6, {"(1,2)", "(3,4)", "(5,6)"});
    const auto closure = two_closure(g);
    t.expect(closure.order() == 8, "closure order is not 8");
    auto a = closure.list_elements();
    auto b = expected.list_elements();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    t.expect(a == b, "closure differs from <(1,2),(3,4),(5,6)> as an element set");
    for (const char* s : {"(1,2)(3,4)", "(3,4)(5,6)"}) {
      const auto sub = detail::group_of(6, {s});
      t.expect(same_group(two_closure(sub), sub), std::string("closure of <") + s + "> is larger");
    }
  });
  return t.finish();
}

/// Containment, idempotence, partition preservation, conjugation equivariance
/// and, up to degree 6, maximality against a listing of Sym(n).
inline CheckResult check_closure_axioms(const SuiteOptions& opt = {}) {
  if (opt.max_degree < 1 || opt.max_degree > kSuiteMaxDegree) {
    throw precondition_error("max degree must lie in 1.." + std::to_string(kSuiteMaxDegree));
  }
  detail::Tally t("closure axioms");
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_groups; ++i) {
    const std::size_t n = 1 + rng() % opt.max_degree;
    const auto g = detail::random_group(n, rng);
    const std::string label = "random group " + std::to_string(i) + " of degree " + std::to_string(n);
    t.guarded(label, [&] { detail::closure_axioms(t, label, g, rng); });
  }
  for (const auto& s : catalog_entries()) {
    const auto g = realize(s);
    if (g.degree() > 12) continue;
    t.guarded(s, [&] { detail::closure_axioms(t, s, g, rng); });
  }
  return t.finish();
}

/// Commuting closures, abelian closures, center lifting and the coprime
/// center product, on disjoint unions of catalog parts of coprime orders.
inline CheckResult check_commutation() {
  detail::Tally t("commutation and center");
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"C2xC2", "C3"}, {"C2xC2", "C5"}, {"C2xC2", "C7"}, {"C2xC2", "C9"}, {"C4", "C3"},    {"C4", "C9"},
      {"D8", "C3"},    {"D8", "C5"},    {"D8", "C3xC3"}, {"Q8", "C3"},    {"Q8", "C5"},    {"C3xC3", "C2"},
      {"C3xC3", "C4"}, {"C3xC3", "D8"}, {"C2xC4", "C3"}, {"C2xC2xC2", "C3"}, {"C2xC2xC2", "C5"}, {"C8", "C5"},
      {"D16", "C3"},   {"SD16", "C3"},  {"C5", "C7"}};
  for (const auto& [hs, ks] : pairs) {
    const std::string label = std::string(hs) + " with " + ks;
    t.guarded(label, [&] {
      const auto h = realize(hs);
      const auto k = realize(ks);
      if (h.degree() + k.degree() > 14) throw defect_error("pair exceeds degree 14");
      const auto u = disjoint_union_action({h, k});
      const std::size_t n = u.group.degree();
      std::vector<Permutation> hg, kg;
      for (const auto& x : h.generators()) hg.push_back(embed_at(x, 0, n));
      for (const auto& x : k.generators()) kg.push_back(embed_at(x, h.degree(), n));
      const PermGroup a(n, hg);
      const PermGroup b(n, kg);
      const auto ca = two_closure(a);
      const auto cb = two_closure(b);
      const auto cg = two_closure(u.group);
      t.expect(detail::all_commute(hg, kg), label + ": factors do not commute");
      t.expect(detail::all_commute(detail::strong_generators(ca), detail::strong_generators(cb)),
               label + ": closures of commuting factors do not commute");
      if (is_abelian(u.group)) t.expect(is_abelian(cg), label + ": closure of an abelian group is nonabelian");
      for (const auto* part : {&a, &b}) {
        if (is_abelian(*part)) t.expect(is_abelian(two_closure(*part)), label + ": closure of an abelian factor");
      }
      const auto z = center(u.group);
      t.expect(detail::all_commute(z.generators(), detail::strong_generators(cg)),
               label + ": a central element does not commute with the closure");
      const auto zc = two_closure(z);
      const auto zh = two_closure(center(a));
      const auto zk = two_closure(center(b));
      t.expect(same_group(zc, join(zh, zk)) && zc.order() == zh.order() * zk.order() &&
                   intersection(zh, zk).is_trivial(),
               label + ": closure of the center is not the direct product of the factor closures");
    });
  }
  return t.finish();
}

/// Every named construction validates definitionally and, within the closure
/// degree guard, the engine sees a strictly larger closure containing the witness.
inline CheckResult check_witnesses() {
  detail::Tally t("witness certificates");
  auto engine = [&](const std::string& label, const WitnessCertificate& c, std::size_t degree) {
    t.expect(c.degree() == degree, label + ": degree " + std::to_string(c.degree()));
    detail::certificate_checks(t, label, c);
    if (c.degree() > kClosureDegreeGuard) return Order(0);
    const auto closure = two_closure(c.group);
    t.expect(closure.order() > c.group.order() && closure.contains(c.witness),
             label + ": engine does not confirm a larger closure");
    return closure.order();
  };
  t.guarded("abp(2,(1,1))", [&] {
    const auto a = abp_witness(2, {1, 1});
    t.expect(engine("abp(2,(1,1))", a.certificate, 6) == 8, "abp(2,(1,1)): closure order is not 8");
  });
  t.guarded("abp(3,(1,1))", [&] {
    const auto a = abp_witness(3, {1, 1});
    t.expect(engine("abp(3,(1,1))", a.certificate, 9) >= 3 * a.certificate.group.order(),
             "abp(3,(1,1)): closure below 3|G|");
  });
  t.guarded("twogroup(D8)", [&] { engine("twogroup(D8)", twogroup_witness(realize("D8")), 8); });
  t.guarded("podd(E27)", [&] { engine("podd(E27)", podd_witness(realize("E27")), 9); });
  t.guarded("semidirect(D8)", [&] {
    const auto d8 = realize("D8");
    engine("semidirect(D8)",
           semidirect_witness(d8, detail::group_of(4, {"(1,2,3,4)"}), detail::group_of(4, {"(2,4)"})), 6);
  });
  t.guarded("semidirect(SD16)", [&] {
    const auto g = realize("SD16");
    const auto m = detail::group_of(8, {"(1,2,3,4,5,6,7,8)"});
    engine("semidirect(SD16)", semidirect_witness(g, m, PermGroup(8, {g.generators()[1]})), 10);
  });
  t.guarded("center(Q8xC2)", [&] { engine("center(Q8xC2)", center_witness(realize("Q8xC2")), 24); });
  return t.finish();
}

/// The nilpotent classification over the catalog, with every negative verdict certified.
inline CheckResult check_classification() {
  detail::Tally t("classification truth table");
  for (const auto& s : detail::positive_entries()) {
    t.guarded(s, [&] {
      const auto v = classify_nilpotent(realize(s));
      t.expect(v.status == Status::TwoClosedGroup, s + ": expected TwoClosedGroup, got " + to_string(v.status));
    });
  }
  for (const auto& s : detail::negative_entries()) {
    t.guarded(s, [&] {
      const auto v = classify_nilpotent(realize(s));
      t.expect(v.status == Status::NotTwoClosedGroup, s + ": expected NotTwoClosedGroup, got " + to_string(v.status));
      t.expect(v.certificate.has_value(), s + ": no certificate");
      if (v.certificate) detail::certificate_checks(t, s, *v.certificate);
    });
  }
  return t.finish();
}

/// Every small faithful action of a 2-closed group is 2-closed, and the
/// coprime product criterion agrees with the engine on Q8 x C3.
inline CheckResult check_positive_side(std::size_t max_degree = 16) {
  detail::Tally t("positive side");
  for (const auto& s : detail::positive_entries()) {
    t.guarded(s, [&] {
      const auto g = realize(s);
      for (const auto& r : faithful_representations(g, max_degree)) {
        t.expect(two_closure(r.image).order() == g.order(),
                 s + ": a degree " + std::to_string(r.degree()) + " action is not 2-closed");
      }
    });
  }
  t.guarded("Q8xC3 on 11 points", [&] {
    const auto g = realize("Q8xC3");
    const auto r = genholt_certify(g, sylow_subgroup(g, 3), sylow_subgroup(g, 2));
    t.expect(g.degree() == 11 && r.certified, "Q8xC3: not certified: " + r.detail);
    t.expect(two_closure(g).order() == g.order(), "Q8xC3: engine finds a larger closure");
  });
  return t.finish();
}

/// The center test fails with a degree 24 certificate exactly where expected.
inline CheckResult check_center_test() {
  detail::Tally t("center test");
  for (const char* s : {"Q8xC2", "C2xQ8xC3"}) {
    t.guarded(s, [&] {
      const auto r = center_cyclic_test(realize(s));
      t.expect(!r.passes && r.certificate.has_value(), std::string(s) + ": test passes");
      if (!r.certificate) return;
      t.expect(r.certificate->degree() == 24, std::string(s) + ": certificate degree is not 24");
      detail::certificate_checks(t, s, *r.certificate);
    });
  }
  for (const auto& s : catalog_entries()) {
    if (s.find('x') != std::string::npos || (s[0] != 'C' && s[0] != 'Q')) continue;
    t.guarded(s, [&] { t.expect(center_cyclic_test(realize(s)).passes, s + ": test fails"); });
  }
  return t.finish();
}

/// Block quotients by an abelian coprime direct factor H: H is normal in the
/// closure, the kernels of G and of its closure are H and the closure of H,
/// and G and its closure stay 2-equivalent on the blocks.
inline CheckResult check_quotients() {
  detail::Tally t("quotient lemmas");
  auto run = [&](const std::string& label, const PermGroup& g, const PermGroup& h) {
    t.guarded(label, [&] {
      const auto closure = two_closure(g);
      const auto hc = two_closure(h);
      t.expect(h.orbits().size() > 1, label + ": H is transitive");
      t.expect(is_normal(closure, h), label + ": H is not normal in the closure");
      const auto qg = quotient_action(g, h);
      const auto qc = quotient_action(closure, h);
      t.expect(same_group(qg.kernel, h), label + ": kernel of G on the blocks is not H");
      t.expect(same_group(qc.kernel, hc), label + ": kernel of the closure on the blocks is not the closure of H");
      t.expect(qg.image.order() * h.order() == g.order(), label + ": G/H does not act faithfully");
      t.expect(two_equivalent(qg.image, qc.image), label + ": block images are not 2-equivalent");
    });
  };
  const auto c6 = realize("C6");
  run("C6 over C3", c6, sylow_subgroup(c6, 3));
  const auto q8c3 = realize("Q8xC3");
  run("Q8xC3 over C3", q8c3, sylow_subgroup(q8c3, 3));
  // Klein four on six points next to a 3-cycle, quotiented by either factor
  const auto v4 = abp_witness(2, {1, 1}).certificate.group;
  const auto u = disjoint_union_action({v4, detail::group_of(3, {"(1,2,3)"})});
  run("Klein four with C3 over C3", u.group, detail::group_of(9, {"(7,8,9)"}));
  std::vector<Permutation> vg;
  for (const auto& x : v4.generators()) vg.push_back(embed_at(x, 0, 9));
  run("Klein four with C3 over the Klein four", u.group, PermGroup(9, vg));
  const auto c2c2 = realize("C2xC2");
  const auto w = disjoint_union_action({c2c2, detail::group_of(3, {"(1,2,3)"})});
  run("regular C2xC2 with C3 over C3", w.group, detail::group_of(7, {"(5,6,7)"}));
  return t.finish();
}

inline std::vector<std::string> suite_names() { return {"axioms", "lemmas", "classification"}; }

/// axioms: worked example, closure axioms, commutation; lemmas: witnesses, center
/// test, quotients; classification: truth table and positive side.
inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  if (name == "axioms") return {check_worked_example(), check_closure_axioms(opt), check_commutation()};
  if (name == "lemmas") return {check_witnesses(), check_center_test(), check_quotients()};
  if (name == "classification") return {check_classification(), check_positive_side()};
  throw precondition_error("unknown suite '" + name + "'");
}

}  // namespace twoclosure
