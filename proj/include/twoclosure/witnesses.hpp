#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "twoclosure/action_space.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/constructions.hpp"
#include "twoclosure/errors.hpp"
#include "twoclosure/homomorphism.hpp"
#include "twoclosure/orbital.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"

namespace twoclosure {

enum class Construction { Abp, TwoGroup, Podd, Semidirect, Center };

inline std::string to_string(Construction c) {
  switch (c) {
    case Construction::Abp: return "Abp";
    case Construction::TwoGroup: return "TwoGroup";
    case Construction::Podd: return "Podd";
    case Construction::Semidirect: return "Semidirect";
    case Construction::Center: return "Center";
  }
  return "?";
}

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

/// A permutation outside the represented group together with pairwise evidence
/// that it lies in the group's 2-closure on the same points.
struct WitnessCertificate {
  Construction construction;
  PermGroup group;
  ActionSpace space;
  Permutation witness;
  MembershipEvidence evidence;
  nlohmann::ordered_json parameters;
  /// The abstract input group mapped onto `group`, when there is one.
  std::optional<ActionMap> representation;
  /// The same witness carried to the whole group when the construction ran on a direct factor.
  std::shared_ptr<const WitnessCertificate> lift;

  std::size_t degree() const noexcept { return group.degree(); }

  /// Rechecks everything definitionally; never consults the closure engine.
  CertificateCheck validate() const {
    if (witness.degree() != group.degree() || space.size() != group.degree()) {
      return {false, "degree mismatch between witness, group and space"};
    }
    if (group.contains(witness)) return {false, "witness lies in the group"};
    if (evidence.theta() != witness) return {false, "evidence was built for another permutation"};
    if (!evidence.verify(group)) return {false, "some pair is not evidenced by a group element"};
    if (lift) {
      auto inner = lift->validate();
      if (!inner.valid) return {false, "lift: " + inner.reason};
    }
    return {true, ""};
  }
};

inline WitnessCertificate make_certificate(Construction construction, PermGroup group, ActionSpace space,
                                           Permutation witness, nlohmann::ordered_json parameters,
                                           std::optional<ActionMap> representation) {
  auto partition = std::make_shared<const OrbitalPartition>(group);
  if (!preserves_colors(witness, *partition)) {
    throw defect_error(to_string(construction) + " witness does not preserve the orbital coloring");
  }
  if (group.contains(witness)) throw defect_error(to_string(construction) + " witness lies in the group");
  MembershipEvidence evidence(std::move(partition), witness);
  return {construction, std::move(group), std::move(space), std::move(witness), std::move(evidence),
          std::move(parameters), std::move(representation), nullptr};
}

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline unsigned log_base(std::uint64_t n, std::uint64_t p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

inline nlohmann::ordered_json cycle_list(const std::vector<Permutation>& perms) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& g : perms) out.push_back(to_cycle_string(g));
  return out;
}

inline std::vector<Point> run(std::size_t from, std::size_t len) {
  std::vector<Point> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = static_cast<Point>(from + i);
  return v;
}

}  // namespace detail

/// Abelian p-group C_{p^k1} x ... x C_{p^kn} (n >= 2) on Omega_1 u ... u Omega_n
/// u Omega_{n+1}, with h_1 = (beta cycle)(Omega_1 cycle) and
/// h_i = (Omega_{i-1} cycle)(Omega_i cycle); the witness is the beta cycle.
struct AbpWitness {
  WitnessCertificate certificate;
  std::vector<Permutation> generators;  // h_1, ..., h_n
};

inline AbpWitness abp_witness(std::uint64_t p, std::vector<unsigned> exponents) {
  if (!is_prime(p)) throw precondition_error("p must be prime");
  if (exponents.size() < 2) throw precondition_error("need at least two cyclic factors (the group would be cyclic)");
  for (auto k : exponents) {
    if (k == 0) throw precondition_error("exponents must be positive");
  }
  if (!std::is_sorted(exponents.begin(), exponents.end())) throw precondition_error("exponents must be ascending");
  const std::size_t n = exponents.size();
  std::vector<std::size_t> offset(n + 1);
  std::size_t total = 0;
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    offset[i] = total;
    total += detail::ipow(p, exponents[i]);
    order *= detail::ipow(p, exponents[i]);
  }
  offset[n] = total;
  total += p;
  if (total > 4096) throw guard_exceeded("abp construction would exceed 4096 points");
  auto omega = [&](std::size_t i) {
    const std::size_t len = i < n ? detail::ipow(p, exponents[i]) : p;
    return detail::run(offset[i], len);
  };
  std::vector<Permutation> h;
  h.push_back(Permutation::from_cycles(total, {omega(n), omega(0)}));
  for (std::size_t i = 1; i < n; ++i) h.push_back(Permutation::from_cycles(total, {omega(i - 1), omega(i)}));
  PermGroup group(total, h);
  if (group.order() != order) throw defect_error("abp generators do not give a direct product");
  const Permutation x = Permutation::from_cycles(total, {omega(n)});

  std::vector<LabelPtr> labels;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < omega(i).size(); ++j) {
      labels.push_back(make_label(label::Part{i, make_label(label::Raw{static_cast<Point>(j)})}));
    }
  }
  nlohmann::ordered_json params;
  params["p"] = p;
  params["exponents"] = exponents;
  params["generators"] = detail::cycle_list(h);
  if (total <= kClosureDegreeGuard) {
    const auto closure = two_closure(group);
    if (closure.order() < Order(p) * group.order()) throw defect_error("abp closure is below p|H|");
    params["closure_order"] = closure.order().str();
  }
  auto cert = make_certificate(Construction::Abp, group, ActionSpace(std::move(labels)), x, std::move(params),
                               std::nullopt);
  return {std::move(cert), std::move(h)};
}

/// The abp construction for a given noncyclic abelian p-group A, with the
/// isomorphism from A (its cyclic factors sent to h_1, ..., h_n) attached.
inline WitnessCertificate abelian_witness(const PermGroup& group) {
  if (!is_abelian(group)) throw precondition_error("group is not abelian");
  const auto ps = prime_divisors(group.order_u64());
  if (ps.size() != 1) throw precondition_error("group is not a p-group");
  const std::uint64_t p = ps.front();
  const auto factors = cyclic_decomposition(group);
  std::vector<unsigned> exponents;
  for (const auto& f : factors) exponents.push_back(detail::log_base(f.order(), p));
  auto abp = abp_witness(p, exponents);
  std::vector<ActionMap::GeneratorImage> iso;
  for (std::size_t i = 0; i < factors.size(); ++i) iso.emplace_back(factors[i], abp.generators[i]);
  ActionMap map(group, abp.certificate.degree(), std::move(iso));
  if (!map.faithful()) throw defect_error("abelian group is not isomorphic to the abp group");
  abp.certificate.parameters["factors"] = detail::cycle_list(factors);
  abp.certificate.representation = std::move(map);
  return std::move(abp.certificate);
}

/// Noncyclic center: take a noncyclic Sylow subgroup N of Z(G), realize it by
/// the abp construction on Delta, embed G in N wr G/N acting on Delta x G/N,
/// and let the witness act as the abp witness on the Delta coordinate.
inline WitnessCertificate center_witness(const PermGroup& group) {
  const PermGroup z = center(group);
  if (is_cyclic(z)) throw precondition_error("center is cyclic");
  std::optional<PermGroup> n;
  std::uint64_t p = 0;
  for (auto q : prime_divisors(z.order_u64())) {
    auto s = sylow_subgroup(z, q);
    if (!is_cyclic(s)) {
      n = std::move(s);
      p = q;
      break;
    }
  }
  if (!n) throw defect_error("noncyclic center without a noncyclic Sylow subgroup");
  const auto abp = abelian_witness(*n);
  const ActionMap& delta = *abp.representation;
  const auto exponents = abp.parameters["exponents"];
  const auto factors = abp.parameters["factors"];

  auto emb = universal_embedding(group, *n, delta, &abp.space);
  const std::size_t dn = emb.delta_size;
  const std::size_t m = emb.data.size();
  // central elements act on the Delta coordinate only
  for (const auto& a : n->generators()) {
    const auto& img = emb.map(a);
    const auto& da = delta(a);
    for (std::size_t k = 0; k < m; ++k) {
      for (Point d = 0; d < dn; ++d) {
        if (img[emb.point(d, k)] != emb.point(da[d], k)) throw defect_error("central element moves the K coordinate");
      }
    }
  }
  std::vector<Point> theta(dn * m);
  const auto& x = abp.witness;
  for (std::size_t k = 0; k < m; ++k) {
    for (Point d = 0; d < dn; ++d) theta[emb.point(d, k)] = emb.point(x[d], k);
  }
  nlohmann::ordered_json params;
  params["p"] = p;
  params["exponents"] = exponents;
  params["N"] = factors;
  params["delta_degree"] = dn;
  params["quotient_order"] = m;
  params["delta_witness"] = to_cycle_string(x);
  return make_certificate(Construction::Center, emb.image, std::move(emb.space), Permutation(std::move(theta)),
                          std::move(params), std::move(emb.map));
}

inline bool is_p_group(const PermGroup& g, std::uint64_t p) { return is_prime_power(g.order_u64(), p); }

/// Elementary abelian of order p^2 and normal in G.
inline void require_normal_rank_two(const PermGroup& group, const PermGroup& n, std::uint64_t p) {
  if (!is_normal(group, n)) throw precondition_error("N is not a normal subgroup of G");
  if (n.order() != Order(p * p) || !is_abelian(n)) throw precondition_error("N is not of type C_p x C_p");
  for (const auto& x : elements(n)) {
    if (!x.is_identity() && x.order() != p) throw precondition_error("N is not of type C_p x C_p");
  }
}

/// A 2-group with a normal Klein four-group N meeting the center in order 2.
/// N acts on Delta = {1,2,3,4} as <(1,2),(3,4)> with a = (1,2) central; C = C_G(N)
/// embeds in N wr C/N on Gamma = Delta x C/N, then G in C wr G/C on Gamma x G/C.
/// The witness swaps 3 and 4 in every sheet.
inline WitnessCertificate twogroup_witness(const PermGroup& group, const PermGroup& n) {
  if (!is_p_group(group, 2)) throw precondition_error("G is not a 2-group");
  require_normal_rank_two(group, n, 2);
  const PermGroup z = center(group);
  const PermGroup nz = intersection(n, z);
  if (nz.order() != 2) {
    throw precondition_error("N must meet Z(G) in a group of order 2 (central N belongs to the center construction)");
  }
  const auto n_elems = elements(n);
  Permutation a = nz.generators().front();
  Permutation b;
  for (const auto& x : n_elems) {
    if (!z.contains(x)) {
      b = x;
      break;
    }
  }
  const PermGroup c = centralizer(group, n);
  if (group.order() != Order(2) * c.order()) throw defect_error("C_G(N) does not have index 2");

  ActionMap on_delta(n, 4, {{a, parse_cycles("(1,2)", 4)}, {b, parse_cycles("(3,4)", 4)}});
  auto inner = universal_embedding(c, n, on_delta);
  auto outer = universal_embedding(group, c, inner.map, &inner.space);
  const std::size_t gamma = inner.image.degree();
  const std::size_t sheets = inner.data.size();
  const Permutation& t = outer.data.transversal.at(1);

  std::vector<Point> theta(outer.image.degree());
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t s = 0; s < sheets; ++s) {
      for (Point i = 0; i < 4; ++i) {
        const Point swapped = i == 2 ? 3 : (i == 3 ? 2 : i);
        theta[k * gamma + s * 4 + i] = static_cast<Point>(k * gamma + s * 4 + swapped);
      }
    }
  }
  // stabilizers of ((1,s),1) and ((1,s),t) are <b> and <ab>
  const auto& image = outer.image;
  const PermGroup sb(image.degree(), {outer.map(b)});
  const PermGroup sab(image.degree(), {outer.map(a * b)});
  for (std::size_t s = 0; s < sheets; ++s) {
    if (!same_group(image.stabilizer(static_cast<Point>(s * 4)), sb) ||
        !same_group(image.stabilizer(static_cast<Point>(gamma + s * 4)), sab)) {
      throw defect_error("stabilizer of a fixed point of the witness differs from <b> or <ab>");
    }
  }
  const auto joint = intersection(image.stabilizer(0), image.stabilizer(static_cast<Point>(gamma)));
  if (!joint.is_trivial()) throw defect_error("fixed points of the witness have a nontrivial joint stabilizer");

  nlohmann::ordered_json params;
  params["a"] = to_cycle_string(a);
  params["b"] = to_cycle_string(b);
  params["t"] = to_cycle_string(t);
  params["centralizer_order"] = c.order().str();
  params["sheets"] = sheets;
  params["joint_stabilizer_order"] = 1;
  return make_certificate(Construction::TwoGroup, outer.image, std::move(outer.space),
                          Permutation(std::move(theta)), std::move(params), std::move(outer.map));
}

/// First normal C_p x C_p = <a> x <b> with a central and b not, scanning
/// central a and then b in canonical order.
inline std::optional<PermGroup> find_rank_two_normal(const PermGroup& group, std::uint64_t p) {
  const PermGroup z = center(group);
  const auto elems = elements(group);
  for (const auto& a : elements(z)) {
    if (a.order() != p) continue;
    for (const auto& b : elems) {
      if (b.order() != p || z.contains(b) || !a.commutes_with(b)) continue;
      const PermGroup n(group.degree(), {a, b});
      if (n.order() == Order(p * p) && is_normal(group, n)) return n;
    }
  }
  return std::nullopt;
}

inline WitnessCertificate twogroup_witness(const PermGroup& group) {
  auto n = find_rank_two_normal(group, 2);
  if (!n) throw precondition_error("no normal Klein four-group meets the center in order 2");
  return twogroup_witness(group, *n);
}

/// Odd p-group with a normal N = <a> x <b> of type C_p x C_p, a central, b not.
/// G acts on the cosets of H = <b>; Omega_i collects the cosets H t^i x with
/// x in C = C_G(N), and the witness multiplies the cosets in Omega_2 by a.
inline WitnessCertificate podd_witness(const PermGroup& group, const PermGroup& n) {
  const auto nn = n.order_u64();
  const auto ps = prime_divisors(nn);
  if (ps.size() != 1) throw precondition_error("N is not a p-group");
  const std::uint64_t p = ps.front();
  if (p == 2) throw precondition_error("p must be odd; use the 2-group construction");
  if (!is_p_group(group, p)) throw precondition_error("G is not a p-group");
  require_normal_rank_two(group, n, p);
  const PermGroup z = center(group);
  const auto n_elems = elements(n);
  std::optional<Permutation> a, b;
  for (const auto& x : n_elems) {
    if (x.is_identity()) continue;
    if (z.contains(x)) {
      if (!a) a = x;
    } else if (!b) {
      b = x;
    }
  }
  if (!b) throw precondition_error("N is central; there is no b outside Z(G)");
  if (!a) throw defect_error("normal N meets the center trivially");
  const PermGroup c = centralizer(group, n);
  if (group.order() != Order(p) * c.order()) throw defect_error("C_G(N) does not have index p");
  Permutation t;
  for (const auto& x : elements(group)) {
    if (!c.contains(x)) {
      t = x;
      break;
    }
  }
  const PermGroup h(group.degree(), {*b});
  auto action = coset_action(group, h, "<b>");
  if (!action.kernel.is_trivial()) throw defect_error("<b> has a nontrivial core");

  const auto& cosets = action.cosets;
  auto sheet = [&](const Permutation& r) -> std::size_t {
    for (std::size_t i = 0; i < p; ++i) {
      if (c.contains(t.pow(-static_cast<std::int64_t>(i)) * r)) return i;
    }
    throw defect_error("coset outside every t^i C");
  };
  const std::size_t m = cosets.size();
  std::vector<Point> theta(m);
  for (std::size_t u = 0; u < m; ++u) {
    const auto& r = cosets.representatives[u];
    theta[u] = static_cast<Point>(sheet(r) == 2 ? cosets(r * *a) : u);
  }

  auto ks = nlohmann::ordered_json::array();
  auto ss = nlohmann::ordered_json::array();
  auto ls = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p; ++i) {
    const auto ti = t.pow(static_cast<std::int64_t>(i) - 2);
    const auto comm = commutator(ti, b->inverse());
    std::optional<std::uint64_t> s;
    for (std::uint64_t e = 0; e < p; ++e) {
      if (a->pow(static_cast<std::int64_t>(e)) == comm) s = e;
    }
    if (!s) throw defect_error("[t^(i-2), b^-1] is not a power of a");
    ss.push_back(*s);
    if (i == 2) {
      ks.push_back(nullptr);
      ls.push_back(nullptr);
      continue;
    }
    std::optional<std::uint64_t> k;
    for (std::uint64_t e = 1; e < p && !k; ++e) {
      if (commutator(ti, b->pow(-static_cast<std::int64_t>(e))) == *a) k = e;
    }
    if (!k) throw defect_error("no k with [t^(i-2), b^-k] = a");
    ks.push_back(*k);
    ls.push_back((1 - static_cast<std::int64_t>(*k * *s)) / static_cast<std::int64_t>(p));
  }
  // G_H and G_Ht meet trivially
  const Point ht = static_cast<Point>(cosets(t));
  if (!intersection(action.image.stabilizer(0), action.image.stabilizer(ht)).is_trivial()) {
    throw defect_error("stabilizers of H and Ht intersect nontrivially");
  }
  nlohmann::ordered_json params;
  params["p"] = p;
  params["a"] = to_cycle_string(*a);
  params["b"] = to_cycle_string(*b);
  params["t"] = to_cycle_string(t);
  params["k"] = ks;
  params["s"] = ss;
  params["l"] = ls;
  return make_certificate(Construction::Podd, action.image, std::move(action.space), Permutation(std::move(theta)),
                          std::move(params), std::move(action.map));
}

inline WitnessCertificate podd_witness(const PermGroup& group) {
  const auto ps = prime_divisors(group.order_u64());
  if (ps.size() != 1 || ps.front() == 2) throw precondition_error("G is not an odd p-group");
  auto n = find_rank_two_normal(group, ps.front());
  if (!n) throw precondition_error("no normal C_p x C_p with exactly one central factor");
  return podd_witness(group, *n);
}

/// G = MH with M normal, H abelian and core-free, M and H meeting trivially.
/// G acts on the cosets of H; each cyclic factor h_i of H gets a fresh cycle
/// tau_i on Gamma_i, and G is re-generated by phi(M) and tau_i phi(h_i).
/// The witness is tau_1.
inline WitnessCertificate semidirect_witness(const PermGroup& group, const PermGroup& m_part,
                                             const PermGroup& h_part) {
  if (!sylow_decomposition(group).nilpotent) throw precondition_error("G is not nilpotent");
  if (!is_normal(group, m_part)) throw precondition_error("M is not normal in G");
  require_subgroup(h_part, group, "H");
  if (!is_abelian(h_part)) throw precondition_error("H is not abelian");
  if (h_part.is_trivial()) throw precondition_error("H is trivial");
  if (!intersection(m_part, h_part).is_trivial()) throw precondition_error("M and H intersect nontrivially");
  if (m_part.order() * h_part.order() != group.order()) throw precondition_error("G is not MH");
  if (!core(group, h_part).is_trivial()) throw precondition_error("H has a nontrivial core in G");

  auto action = coset_action(group, h_part, "H");
  const std::size_t omega = action.image.degree();
  const auto hs = cyclic_decomposition(h_part);
  std::size_t total = omega;
  std::vector<std::size_t> offsets;
  for (const auto& h : hs) {
    offsets.push_back(total);
    total += h.order();
  }
  auto lift = [&](const Permutation& x) { return embed_at(action.map(x), 0, total); };
  std::vector<ActionMap::GeneratorImage> assignments;
  for (const auto& mj : m_part.generators()) assignments.emplace_back(mj, lift(mj));
  std::vector<Permutation> taus;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    taus.push_back(Permutation::from_cycles(total, {detail::run(offsets[i], hs[i].order())}));
    assignments.emplace_back(hs[i], taus[i] * lift(hs[i]));
  }
  std::optional<ActionMap> map;
  try {
    map.emplace(group, total, std::move(assignments));
  } catch (const precondition_error& e) {
    throw defect_error(std::string("construction failure: ") + e.what());
  }
  PermGroup bar = map->image();
  if (bar.order() != group.order() || !map->faithful()) throw defect_error("construction failure: |G-bar| != |G|");

  std::vector<LabelPtr> labels = action.space.labels();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = 0; j < hs[i].order(); ++j) {
      labels.push_back(make_label(label::Part{i + 1, make_label(label::Raw{static_cast<Point>(j)})}));
    }
  }
  nlohmann::ordered_json params;
  params["M"] = detail::cycle_list(m_part.generators());
  params["H"] = detail::cycle_list(hs);
  params["coset_degree"] = omega;
  params["tau"] = detail::cycle_list(taus);
  return make_certificate(Construction::Semidirect, std::move(bar), ActionSpace(std::move(labels)), taus.front(),
                          std::move(params), std::move(map));
}

/// Carries a certificate built for the Sylow p-factor P of a nilpotent G to G
/// itself: G = P x O acts on the certificate's points through P and on O
/// regularly through O, and the witness is extended by the identity on O.
inline WitnessCertificate lift_certificate(WitnessCertificate cert, const PermGroup& group, const PermGroup& factor,
                                           std::uint64_t p) {
  if (!cert.representation || !same_group(cert.representation->source(), factor)) {
    throw precondition_error("certificate carries no representation of the factor");
  }
  const PermGroup complement = hall_complement(group, p);
  require_coprime_direct_product(group, factor, complement);
  auto regular = regular_action(complement);
  const std::size_t base = cert.degree();
  const std::size_t total = base + regular.image.degree();
  std::vector<ActionMap::GeneratorImage> assignments;
  for (const auto& g : group.generators()) {
    const auto [gp, go] = split_in_product(g, factor, complement);
    assignments.emplace_back(g, embed_at((*cert.representation)(gp), 0, total) *
                                    embed_at(regular.map(go), base, total));
  }
  ActionMap map(group, total, std::move(assignments));
  if (!map.faithful()) throw defect_error("lifted action is not faithful");
  auto joined = disjoint_union_action({cert.group, regular.image}, {cert.space, regular.space});
  nlohmann::ordered_json params;
  params["factor_prime"] = p;
  params["factor_order"] = factor.order().str();
  params["complement_order"] = complement.order().str();
  PermGroup image = map.image();
  auto lifted = make_certificate(cert.construction, std::move(image), std::move(joined.space),
                                 embed_at(cert.witness, 0, total), std::move(params), std::move(map));
  cert.lift = std::make_shared<const WitnessCertificate>(std::move(lifted));
  return cert;
}

}  // namespace twoclosure
