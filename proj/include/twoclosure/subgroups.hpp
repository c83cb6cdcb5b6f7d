#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "twoclosure/errors.hpp"
#include "twoclosure/perm_group.hpp"

namespace twoclosure {

/// Element-listing operators refuse groups larger than this.
inline constexpr std::uint64_t kEnumerationGuard = 20000;

inline void check_enumeration_guard(const PermGroup& g, std::uint64_t guard = kEnumerationGuard) {
  if (g.order() > Order(guard)) {
    throw guard_exceeded("group of order " + g.order().str() + " exceeds the enumeration guard of " +
                         std::to_string(guard));
  }
}

/// All elements in canonical (lexicographic image) order.
inline std::vector<Permutation> elements(const PermGroup& g) {
  check_enumeration_guard(g);
  return g.list_elements();
}

/// Builds a group from a sorted element list, taking each element that is not
/// yet generated by the earlier picks. Deterministic and usually small.
inline PermGroup group_from_elements(std::size_t degree, const std::vector<Permutation>& elems) {
  StabilizerChain chain(degree);
  std::vector<Permutation> gens;
  for (const auto& x : elems) {
    if (chain.add_generator(x)) gens.push_back(x);
  }
  return PermGroup(degree, std::move(gens));
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!gens[i].commutes_with(gens[j])) return false;
    }
  }
  return true;
}

inline bool is_cyclic(const PermGroup& g) {
  if (g.is_trivial()) return true;
  if (!is_abelian(g)) return false;
  const auto n = g.order_u64();
  check_enumeration_guard(g);
  bool found = false;
  g.chain().for_each_element([&](const Permutation& x) {
    if (!found && x.order() == n) found = true;
  });
  return found;
}

/// element order -> number of elements of that order
inline std::map<std::uint64_t, std::uint64_t> order_profile(const PermGroup& g) {
  check_enumeration_guard(g);
  std::map<std::uint64_t, std::uint64_t> profile;
  g.chain().for_each_element([&](const Permutation& x) { ++profile[x.order()]; });
  return profile;
}

inline std::uint64_t exponent(const PermGroup& g) {
  std::uint64_t e = 1;
  for (const auto& [ord, count] : order_profile(g)) e = std::lcm(e, ord);
  return e;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  auto ps = prime_divisors(n);
  return ps.size() == 1 && ps[0] == n;
}

/// Largest power of p dividing n.
inline std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

inline bool is_prime_power(std::uint64_t n, std::uint64_t p) { return n >= 1 && prime_part(n, p) == n; }

inline bool is_normal(const PermGroup& group, const PermGroup& sub) {
  if (!is_subgroup(sub, group)) return false;
  for (const auto& g : group.generators()) {
    for (const auto& h : sub.generators()) {
      if (!sub.contains(h.conjugate_by(g))) return false;
    }
  }
  return true;
}

inline void require_subgroup(const PermGroup& sub, const PermGroup& group, const char* what) {
  if (!is_subgroup(sub, group)) {
    throw precondition_error(std::string(what) + " is not a subgroup of the given group");
  }
}

inline PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw precondition_error("degree mismatch in intersection");
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& other = a.order() <= b.order() ? b : a;
  std::vector<Permutation> common;
  for (auto& x : elements(small)) {
    if (other.contains(x)) common.push_back(std::move(x));
  }
  return group_from_elements(a.degree(), common);
}

/// C_G(H): elements of G commuting with every generator of H.
inline PermGroup centralizer(const PermGroup& group, const PermGroup& sub) {
  if (sub.degree() != group.degree()) throw precondition_error("degree mismatch in centralizer");
  std::vector<Permutation> out;
  for (auto& x : elements(group)) {
    bool ok = std::all_of(sub.generators().begin(), sub.generators().end(),
                          [&](const Permutation& h) { return x.commutes_with(h); });
    if (ok) out.push_back(std::move(x));
  }
  return group_from_elements(group.degree(), out);
}

inline PermGroup center(const PermGroup& group) { return centralizer(group, group); }

/// H_G: the largest normal subgroup of G inside H, found as the largest subset
/// of H closed under conjugation by the generators of G.
inline PermGroup core(const PermGroup& group, const PermGroup& sub) {
  require_subgroup(sub, group, "H");
  check_enumeration_guard(group);
  auto kept = elements(sub);
  std::unordered_set<Permutation> in_set(kept.begin(), kept.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Permutation> next;
    for (auto& h : kept) {
      bool stays = std::all_of(group.generators().begin(), group.generators().end(),
                               [&](const Permutation& g) { return in_set.count(h.conjugate_by(g)) != 0; });
      if (stays) {
        next.push_back(std::move(h));
      } else {
        changed = true;
      }
    }
    kept = std::move(next);
    in_set = std::unordered_set<Permutation>(kept.begin(), kept.end());
  }
  return group_from_elements(group.degree(), kept);
}

/// A subgroup together with the group it lives in.
struct SubgroupHandle {
  PermGroup group;
  PermGroup parent;

  static SubgroupHandle make(PermGroup parent, PermGroup group) {
    require_subgroup(group, parent, "subgroup handle");
    return {std::move(group), std::move(parent)};
  }
};

struct SubgroupOperators {
  PermGroup center;
  PermGroup centralizer_of_sub;
  PermGroup core_of_sub;
};

inline SubgroupOperators subgroup_operators(const PermGroup& group, const PermGroup& sub) {
  require_subgroup(sub, group, "H");
  return {center(group), centralizer(group, sub), core(group, sub)};
}

/// p-part and p'-part of x: x = p_part * rest, both powers of x.
inline std::pair<Permutation, Permutation> split_prime_part(const Permutation& x, std::uint64_t p) {
  const std::uint64_t n = x.order();
  const std::uint64_t a = prime_part(n, p);
  const std::uint64_t b = n / a;
  // e ≡ 1 (mod a), e ≡ 0 (mod b)
  std::uint64_t e = 0;
  for (std::uint64_t k = 0; k < a; ++k) {
    if ((k * b) % a == 1 % a) {
      e = k * b;
      break;
    }
  }
  Permutation pp = x.pow(static_cast<std::int64_t>(e));
  return {pp, pp.inverse() * x};
}

/// A Sylow p-subgroup, grown greedily through p-elements in canonical order.
inline PermGroup sylow_subgroup(const PermGroup& group, std::uint64_t p) {
  const auto n = group.order_u64();
  const std::uint64_t target = prime_part(n, p);
  const auto elems = elements(group);
  StabilizerChain chain(group.degree());
  std::vector<Permutation> gens;
  for (const auto& x : elems) {
    if (chain.order() == Order(target)) break;
    if (!is_prime_power(x.order(), p) || chain.contains(x)) continue;
    StabilizerChain trial = chain;
    trial.add_generator(x);
    const Order o = trial.order();
    if (o <= Order(UINT64_MAX) && is_prime_power(o.convert_to<std::uint64_t>(), p)) {
      chain = std::move(trial);
      gens.push_back(x);
    }
  }
  if (chain.order() != Order(target)) throw defect_error("Sylow search did not reach full order");
  return PermGroup(group.degree(), std::move(gens));
}

struct SylowDecomposition {
  bool nilpotent = false;
  std::map<std::uint64_t, PermGroup> sylows;
};

/// Nilpotent iff every Sylow subgroup is normal; then G is their internal direct product.
inline SylowDecomposition sylow_decomposition(const PermGroup& group) {
  check_enumeration_guard(group);
  SylowDecomposition out;
  out.nilpotent = true;
  for (auto p : prime_divisors(group.order_u64())) {
    PermGroup s = sylow_subgroup(group, p);
    if (!is_normal(group, s)) out.nilpotent = false;
    out.sylows.emplace(p, std::move(s));
  }
  if (out.nilpotent) {
    Order product = 1;
    for (const auto& [p, s] : out.sylows) product *= s.order();
    if (product != group.order()) throw defect_error("Sylow orders do not multiply to |G|");
  }
  return out;
}

/// The subgroup of elements whose order is coprime to p (meaningful when G is nilpotent).
inline PermGroup hall_complement(const PermGroup& group, std::uint64_t p) {
  std::vector<Permutation> out;
  for (auto& x : elements(group)) {
    if (x.order() % p != 0) out.push_back(std::move(x));
  }
  return group_from_elements(group.degree(), out);
}

/// A ∩ <x> = 1 test for an element set closed under multiplication.
inline bool meets_trivially(const std::unordered_set<Permutation>& product, const Permutation& x) {
  Permutation y = x;
  while (!y.is_identity()) {
    if (product.count(y) != 0) return false;
    y = y * x;
  }
  return true;
}

/// Generators h_1, ..., h_t of an abelian group with A = <h_1> x ... x <h_t>,
/// listed by ascending order. Factors are peeled greedily, largest order first
/// and canonical order among equals, backtracking when a choice cannot be
/// completed to a full decomposition.
inline std::vector<Permutation> cyclic_decomposition(const PermGroup& group) {
  if (!is_abelian(group)) throw precondition_error("cyclic decomposition needs an abelian group");
  if (group.is_trivial()) return {};
  auto elems = elements(group);
  std::stable_sort(elems.begin(), elems.end(),
                   [](const Permutation& a, const Permutation& b) { return a.order() > b.order(); });
  const std::size_t total = elems.size();
  std::vector<Permutation> chosen;

  auto recurse = [&](auto&& self, const std::unordered_set<Permutation>& product) -> bool {
    if (product.size() == total) return true;
    for (const auto& x : elems) {
      if (x.is_identity() || product.size() * x.order() > total) continue;
      if (total % (product.size() * x.order()) != 0 || !meets_trivially(product, x)) continue;
      std::unordered_set<Permutation> next;
      Permutation power = Permutation::identity(x.degree());
      for (std::uint64_t k = 0; k < x.order(); ++k) {
        for (const auto& y : product) next.insert(y * power);
        power = power * x;
      }
      chosen.push_back(x);
      if (self(self, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::unordered_set<Permutation> start{Permutation::identity(group.degree())};
  if (!recurse(recurse, start)) throw defect_error("abelian group admits no cyclic decomposition");
  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const Permutation& a, const Permutation& b) { return a.order() < b.order(); });
  return chosen;
}

}  // namespace twoclosure
