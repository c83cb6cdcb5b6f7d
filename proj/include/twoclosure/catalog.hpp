#pragma once

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twoclosure/action_space.hpp"
#include "twoclosure/constructions.hpp"
#include "twoclosure/errors.hpp"
#include "twoclosure/homomorphism.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"

namespace twoclosure {

enum class Family { Cyclic, Abelian, Dihedral, Semidihedral, Quaternion, Extraspecial };

/// One direct factor. `order` is the group order for every family except
/// Abelian, where the group is C_{p^k1} x ... with p = prime.
struct FamilyFactor {
  Family family = Family::Cyclic;
  std::uint64_t order = 1;
  std::uint64_t prime = 0;
  std::vector<unsigned> exponents;
};

/// Text forms: C<n>, D<2n>, SD<2^n>, Q<2^n>, E<p^3>, Ab(p:k1,k2,...), joined by 'x'.
struct FamilySpec {
  std::vector<FamilyFactor> factors;
};

namespace detail {

inline std::uint64_t int_log(std::uint64_t n, std::uint64_t base) {
  unsigned k = 0;
  std::uint64_t v = 1;
  while (v < n) {
    v *= base;
    ++k;
  }
  return v == n ? k : 0;
}

inline std::string factor_string(const FamilyFactor& f) {
  switch (f.family) {
    case Family::Cyclic: return "C" + std::to_string(f.order);
    case Family::Dihedral: return "D" + std::to_string(f.order);
    case Family::Semidihedral: return "SD" + std::to_string(f.order);
    case Family::Quaternion: return "Q" + std::to_string(f.order);
    case Family::Extraspecial: return "E" + std::to_string(f.order);
    case Family::Abelian: {
      std::string s = "Ab(" + std::to_string(f.prime) + ":";
      for (std::size_t i = 0; i < f.exponents.size(); ++i) s += (i ? "," : "") + std::to_string(f.exponents[i]);
      return s + ")";
    }
  }
  return "?";
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FamilySpec parse() {
    FamilySpec spec;
    if (text_.empty()) fail("empty family spec");
    spec.factors.push_back(factor());
    while (pos_ < text_.size()) {
      if (text_[pos_] != 'x') fail("expected 'x' between factors");
      ++pos_;
      spec.factors.push_back(factor());
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " at column " + std::to_string(pos_ + 1), 1, pos_ + 1);
  }

  bool take(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      if (v > 1'000'000'000) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  FamilyFactor factor() {
    const std::size_t start = pos_;
    FamilyFactor f;
    if (take("Ab(")) {
      f.family = Family::Abelian;
      f.prime = number();
      if (!take(":")) fail("expected ':'");
      f.exponents.push_back(static_cast<unsigned>(number()));
      while (take(",")) f.exponents.push_back(static_cast<unsigned>(number()));
      if (!take(")")) fail("expected ')'");
      if (!is_prime(f.prime)) fail_at(start, "Ab needs a prime");
      for (auto k : f.exponents) {
        if (k == 0 || k > 16) fail_at(start, "Ab exponents must be in 1..16");
      }
      f.order = 1;
      for (auto k : f.exponents) {
        for (unsigned i = 0; i < k; ++i) f.order *= f.prime;
      }
      return f;
    }
    if (take("SD")) {
      f.family = Family::Semidihedral;
    } else if (take("C")) {
      f.family = Family::Cyclic;
    } else if (take("D")) {
      f.family = Family::Dihedral;
    } else if (take("Q")) {
      f.family = Family::Quaternion;
    } else if (take("E")) {
      f.family = Family::Extraspecial;
    } else {
      fail("unknown family");
    }
    f.order = number();
    switch (f.family) {
      case Family::Cyclic:
        if (f.order == 0) fail_at(start, "C needs n >= 1");
        break;
      case Family::Dihedral:
        if (f.order < 6 || f.order % 2 != 0) fail_at(start, "D needs an even order of at least 6");
        break;
      case Family::Semidihedral:
        if (int_log(f.order, 2) < 4) fail_at(start, "SD needs order 2^n with n >= 4");
        break;
      case Family::Quaternion:
        if (int_log(f.order, 2) < 3) fail_at(start, "Q needs order 2^n with n >= 3");
        break;
      case Family::Extraspecial: {
        std::uint64_t p = 2;
        while (p * p * p < f.order) ++p;
        if (p * p * p != f.order || !is_prime(p) || p == 2) fail_at(start, "E needs order p^3 with p an odd prime");
        f.prime = p;
        break;
      }
      case Family::Abelian: break;
    }
    return f;
  }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw parse_error(msg + " at column " + std::to_string(at + 1), 1, at + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Profile = std::map<std::uint64_t, std::uint64_t>;

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

inline Profile cyclic_profile(std::uint64_t n) {
  Profile out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out[d] = euler_phi(d);
  }
  return out;
}

inline Profile product_profile(const Profile& a, const Profile& b) {
  Profile out;
  for (const auto& [oa, ca] : a) {
    for (const auto& [ob, cb] : b) out[std::lcm(oa, ob)] += ca * cb;
  }
  return out;
}

/// Element-order counts from the family formulas.
inline Profile expected_profile(const FamilyFactor& f) {
  switch (f.family) {
    case Family::Cyclic: return cyclic_profile(f.order);
    case Family::Abelian: {
      Profile out{{1, 1}};
      for (auto k : f.exponents) {
        std::uint64_t n = 1;
        for (unsigned i = 0; i < k; ++i) n *= f.prime;
        out = product_profile(out, cyclic_profile(n));
      }
      return out;
    }
    case Family::Dihedral: {
      auto out = cyclic_profile(f.order / 2);
      out[2] += f.order / 2;
      return out;
    }
    case Family::Quaternion: {
      auto out = cyclic_profile(f.order / 2);
      out[4] += f.order / 2;
      return out;
    }
    case Family::Semidihedral: {
      auto out = cyclic_profile(f.order / 2);
      out[2] += f.order / 4;
      out[4] += f.order / 4;
      return out;
    }
    case Family::Extraspecial: return {{1, 1}, {f.prime, f.order - 1}};
  }
  return {};
}

/// Default faithful action of one factor.
inline PermGroup realize_factor(const FamilyFactor& f) {
  auto cycle = [](std::size_t n) {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    return c;
  };
  auto from_map = [](std::size_t n, auto&& img) {
    std::vector<Point> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Point>(img(i));
    return Permutation(std::move(v));
  };
  switch (f.family) {
    case Family::Cyclic: {
      const auto n = static_cast<std::size_t>(f.order);
      return PermGroup(n, {Permutation::from_cycles(n, {cycle(n)})});
    }
    case Family::Abelian: {
      // disjoint cycles of lengths p^{k_i}
      std::size_t total = 0;
      std::vector<std::size_t> lens;
      for (auto k : f.exponents) {
        std::size_t n = 1;
        for (unsigned i = 0; i < k; ++i) n *= f.prime;
        lens.push_back(n);
        total += n;
      }
      std::vector<Permutation> gens;
      std::size_t off = 0;
      for (auto n : lens) {
        auto c = cycle(n);
        for (auto& p : c) p = static_cast<Point>(p + off);
        gens.push_back(Permutation::from_cycles(total, {c}));
        off += n;
      }
      return PermGroup(total, std::move(gens));
    }
    case Family::Dihedral: {
      // natural action on the n-gon
      const auto n = static_cast<std::size_t>(f.order / 2);
      return PermGroup(n, {from_map(n, [&](std::size_t i) { return (i + 1) % n; }),
                           from_map(n, [&](std::size_t i) { return (n - i) % n; })});
    }
    case Family::Semidihedral: {
      // affine maps x -> x+1 and x -> u x on Z/m, m = |G|/2, u = m/2 - 1
      const auto m = static_cast<std::size_t>(f.order / 2);
      const std::size_t u = m / 2 - 1;
      return PermGroup(m, {from_map(m, [&](std::size_t i) { return (i + 1) % m; }),
                           from_map(m, [&](std::size_t i) { return (u * i) % m; })});
    }
    case Family::Quaternion: {
      // regular: x^i y^j stored at 2i + j, right multiplication by x and y
      const auto n = static_cast<std::size_t>(f.order);
      const std::size_t m = n / 2;
      const std::size_t h = m / 2;
      auto idx = [](std::size_t i, std::size_t j) { return 2 * i + j; };
      auto mx = from_map(n, [&](std::size_t e) {
        const std::size_t i = e / 2;
        return e % 2 == 0 ? idx((i + 1) % m, 0) : idx((i + m - 1) % m, 1);
      });
      auto my = from_map(n, [&](std::size_t e) {
        const std::size_t i = e / 2;
        return e % 2 == 0 ? idx(i, 1) : idx((i + h) % m, 0);
      });
      return PermGroup(n, {mx, my});
    }
    case Family::Extraspecial: {
      // regular: triples (x, y, z) with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')
      const auto p = static_cast<std::size_t>(f.prime);
      const std::size_t n = p * p * p;
      auto right = [&](std::size_t x2, std::size_t y2, std::size_t z2) {
        return from_map(n, [&, x2, y2, z2](std::size_t e) {
          const std::size_t x = e / (p * p), y = (e / p) % p, z = e % p;
          return ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p;
        });
      };
      return PermGroup(n, {right(1, 0, 0), right(0, 1, 0)});
    }
  }
  throw defect_error("unknown family");
}

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) { return detail::SpecParser(text).parse(); }

inline std::string to_string(const FamilySpec& spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) s += (i ? "x" : "") + detail::factor_string(spec.factors[i]);
  return s;
}

inline std::uint64_t family_order(const FamilySpec& spec) {
  std::uint64_t o = 1;
  for (const auto& f : spec.factors) o *= f.order;
  return o;
}

inline std::map<std::uint64_t, std::uint64_t> expected_order_profile(const FamilySpec& spec) {
  detail::Profile out{{1, 1}};
  for (const auto& f : spec.factors) out = detail::product_profile(out, detail::expected_profile(f));
  return out;
}

/// Direct products are realized on the disjoint union of the factors' actions.
/// Regular for Q and E, natural for D, affine for SD, a single cycle for C and
/// disjoint cycles for Ab.
inline PermGroup realize(const FamilySpec& spec) {
  if (spec.factors.empty()) throw precondition_error("empty family spec");
  if (family_order(spec) > kEnumerationGuard) throw guard_exceeded("family order exceeds the enumeration guard");
  std::vector<PermGroup> parts;
  for (const auto& f : spec.factors) parts.push_back(detail::realize_factor(f));
  PermGroup g = parts.size() == 1 ? parts.front() : disjoint_union_action(parts).group;
  if (g.order() != family_order(spec)) throw defect_error("realized " + to_string(spec) + " has the wrong order");
  if (order_profile(g) != expected_order_profile(spec)) {
    throw defect_error("realized " + to_string(spec) + " has the wrong order profile");
  }
  return g;
}

inline PermGroup realize(std::string_view text) { return realize(parse_family(text)); }

/// Groups named by the classification, plus a few extra products.
inline std::vector<std::string> catalog_entries() {
  std::vector<std::string> out;
  for (int n = 1; n <= 30; ++n) out.push_back("C" + std::to_string(n));
  for (const char* s : {"Q8", "Q16", "Q32", "Q8xC3", "Q8xC5", "Q16xC3", "Q16xC9", "C2xC2", "C2xC4", "C3xC3",
                        "C2xC2xC2", "D8", "D16", "SD16", "Q8xC2", "Q16xC2", "Q8xC3xC3", "E27", "C2xQ8xC3"}) {
    out.emplace_back(s);
  }
  return out;
}

inline constexpr std::uint64_t kLatticeGuard = 256;
inline constexpr std::size_t kLatticeSizeGuard = 20000;

struct LatticeEntry {
  PermGroup group;
  std::bitset<kLatticeGuard> members;  // indices into the sorted element list
  bool normal = false;
  PermGroup core;
  std::bitset<kLatticeGuard> core_members;
};

struct SubgroupLattice {
  std::vector<Permutation> elements;
  std::vector<LatticeEntry> subgroups;  // by order, then member set
};

namespace detail {

struct Table {
  std::vector<Permutation> elems;
  std::unordered_map<Permutation, std::size_t> index;
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;

  explicit Table(const PermGroup& g) : elems(elements(g)) {
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) index.emplace(elems[i], i);
    mul.assign(n, std::vector<std::size_t>(n));
    inv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) mul[i][j] = index.at(elems[i] * elems[j]);
      inv[i] = index.at(elems[i].inverse());
    }
  }

  using Set = std::bitset<kLatticeGuard>;

  Set generate(Set s) const {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (s[i]) members.push_back(i);
    }
    for (std::size_t h = 0; h < members.size(); ++h) {
      for (std::size_t k = 0; k <= h; ++k) {
        for (auto [a, b] : {std::pair{members[h], members[k]}, std::pair{members[k], members[h]}}) {
          const auto c = mul[a][b];
          if (!s[c]) {
            s.set(c);
            members.push_back(c);
          }
        }
      }
    }
    return s;
  }

  Set conjugate(const Set& s, std::size_t g) const {
    Set out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (s[i]) out.set(mul[mul[inv[g]][i]][g]);
    }
    return out;
  }

  PermGroup group_of(const Set& s, std::size_t degree) const {
    std::vector<Permutation> v;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (s[i]) v.push_back(elems[i]);
    }
    return group_from_elements(degree, v);
  }
};

inline bool bitset_less(const std::bitset<kLatticeGuard>& a, const std::bitset<kLatticeGuard>& b) {
  for (std::size_t i = 0; i < kLatticeGuard; ++i) {
    if (a[i] != b[i]) return a[i];
  }
  return false;
}

}  // namespace detail

/// All subgroups, by iterated pairwise joins starting from the cyclic subgroups.
inline SubgroupLattice subgroup_lattice(const PermGroup& group) {
  if (group.order() > Order(kLatticeGuard)) {
    throw guard_exceeded("subgroup lattice is limited to order " + std::to_string(kLatticeGuard));
  }
  const detail::Table t(group);
  using Set = detail::Table::Set;
  auto less = [](const Set& a, const Set& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return detail::bitset_less(a, b);
  };
  std::set<Set, decltype(less)> found(less);
  for (std::size_t i = 0; i < t.elems.size(); ++i) {
    Set s;
    s.set(0);
    s.set(i);
    found.insert(t.generate(s));
  }
  std::vector<Set> frontier(found.begin(), found.end());
  const std::vector<Set> cyclic = frontier;
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const auto& a : frontier) {
      for (const auto& c : cyclic) {
        if ((a | c) == a) continue;
        auto j = t.generate(a | c);
        if (found.insert(j).second) {
          next.push_back(j);
          if (found.size() > kLatticeSizeGuard) throw guard_exceeded("too many subgroups");
        }
      }
    }
    frontier = std::move(next);
  }
  SubgroupLattice out;
  out.elements = t.elems;
  for (const auto& s : found) {
    Set core = s;
    bool normal = true;
    for (std::size_t g = 0; g < t.elems.size(); ++g) {
      const Set c = t.conjugate(s, g);
      if (c != s) normal = false;
      core &= c;
    }
    out.subgroups.push_back({t.group_of(s, group.degree()), s, normal, t.group_of(core, group.degree()), core});
  }
  return out;
}

/// A faithful action as a disjoint union of coset actions.
struct Representation {
  std::vector<PermGroup> stabilizers;  // one point stabilizer per orbit
  PermGroup image;
  ActionSpace space;
  ActionMap map;
  std::size_t degree() const noexcept { return image.degree(); }
};

/// Faithful actions of degree at most max_degree: transitive ones on the cosets
/// of a core-free subgroup, and unions of two or three coset actions on proper,
/// non-core-free subgroups whose cores meet trivially. One action per choice of
/// conjugacy classes of point stabilizers.
inline std::vector<Representation> faithful_representations(const PermGroup& group, std::size_t max_degree) {
  const auto lattice = subgroup_lattice(group);
  const detail::Table t(group);
  using Set = detail::Table::Set;
  const std::uint64_t n = group.order_u64();

  // one representative per conjugacy class: the first in lattice order
  std::vector<std::size_t> reps;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lattice.subgroups.size(); ++i) {
    const Set& s = lattice.subgroups[i].members;
    if (seen.count(s.to_string())) continue;
    for (std::size_t g = 0; g < t.elems.size(); ++g) seen.insert(t.conjugate(s, g).to_string());
    reps.push_back(i);
  }
  auto index_of = [&](std::size_t i) { return n / lattice.subgroups[i].group.order_u64(); };

  std::vector<Representation> out;
  auto emit = [&](const std::vector<std::size_t>& parts) {
    std::vector<CosetAction> actions;
    std::vector<PermGroup> images;
    std::vector<ActionSpace> spaces;
    std::vector<PermGroup> stabs;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& sub = lattice.subgroups[parts[k]].group;
      actions.push_back(coset_action(group, sub, "H" + std::to_string(k + 1)));
      images.push_back(actions.back().image);
      spaces.push_back(actions.back().space);
      stabs.push_back(sub);
    }
    auto joined = disjoint_union_action(images, spaces);
    const std::size_t total = joined.group.degree();
    std::vector<ActionMap::GeneratorImage> a;
    for (const auto& g : group.generators()) {
      Permutation img = Permutation::identity(total);
      for (std::size_t k = 0; k < actions.size(); ++k) img = img * embed_at(actions[k].map(g), joined.offsets[k], total);
      a.emplace_back(g, img);
    }
    ActionMap map(group, total, std::move(a));
    if (!map.faithful()) throw defect_error("sampled representation is not faithful");
    PermGroup image = map.image();
    out.push_back({std::move(stabs), std::move(image), std::move(joined.space), std::move(map)});
  };

  for (auto i : reps) {
    if (index_of(i) <= max_degree && lattice.subgroups[i].core.is_trivial()) emit({i});
  }
  // intransitive: two or three orbits on distinct classes, none faithful alone
  std::vector<std::size_t> parts;
  auto extend = [&](auto&& self, std::size_t from, std::size_t degree, const Set& core) -> void {
    if (parts.size() >= 2 && core.count() == 1) emit(parts);
    if (parts.size() == 3) return;
    for (std::size_t x = from; x < reps.size(); ++x) {
      const auto& e = lattice.subgroups[reps[x]];
      if (e.group.order() == group.order() || e.core.is_trivial()) continue;
      if (degree + index_of(reps[x]) > max_degree) continue;
      parts.push_back(reps[x]);
      self(self, x + 1, degree + index_of(reps[x]), parts.size() == 1 ? e.core_members : (core & e.core_members));
      parts.pop_back();
    }
  };
  extend(extend, 0, 0, Set{});
  if (out.empty() && group.is_trivial() && max_degree >= 1) {
    ActionMap map(group, 1, {});
    out.push_back({{group}, PermGroup::trivial(1), ActionSpace::raw(1), std::move(map)});
  }
  return out;
}

}  // namespace twoclosure
