#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twoclosure/action_space.hpp"
#include "twoclosure/errors.hpp"
#include "twoclosure/homomorphism.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"

namespace twoclosure {

/// Right cosets of a subgroup, each named by its least element.
struct CosetTable {
  std::vector<Permutation> representatives;                // least element of each coset
  std::unordered_map<Permutation, std::size_t> coset_of;  // element -> coset index

  /// Cosets in order of their least element, so the subgroup itself is coset 0.
  static CosetTable build(const PermGroup& group, const PermGroup& sub) {
    require_subgroup(sub, group, "subgroup");
    CosetTable t;
    const auto sub_elems = elements(sub);
    for (const auto& x : elements(group)) {
      if (t.coset_of.count(x) != 0) continue;
      const std::size_t idx = t.representatives.size();
      t.representatives.push_back(x);
      for (const auto& h : sub_elems) t.coset_of.emplace(h * x, idx);
    }
    return t;
  }

  std::size_t size() const noexcept { return representatives.size(); }
  std::size_t operator()(const Permutation& x) const { return coset_of.at(x); }
};

struct CosetAction {
  PermGroup image;
  ActionSpace space;
  PermGroup kernel;
  ActionMap map;
  CosetTable cosets;
};

/// G acting on the right cosets of H by right multiplication.
inline CosetAction coset_action(const PermGroup& group, const PermGroup& sub, const std::string& name = "H") {
  CosetTable cosets = CosetTable::build(group, sub);
  const std::size_t m = cosets.size();
  std::vector<Permutation> images;
  for (const auto& g : group.generators()) {
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Point>(cosets(cosets.representatives[i] * g));
    images.emplace_back(std::move(img));
  }
  std::vector<LabelPtr> labels;
  for (const auto& r : cosets.representatives) labels.push_back(make_label(label::Coset{name, r}));
  ActionMap map = ActionMap::from_generator_images(group, m, images);
  PermGroup kernel = map.kernel();
  return {map.image(), ActionSpace(std::move(labels)), std::move(kernel), std::move(map), std::move(cosets)};
}

/// The regular action on the group's own elements.
inline CosetAction regular_action(const PermGroup& group) {
  return coset_action(group, PermGroup::trivial(group.degree()), "1");
}

/// Shifts a permutation of `part.degree()` points to positions offset.. inside `total` points.
inline Permutation embed_at(const Permutation& part, std::size_t offset, std::size_t total) {
  std::vector<Point> img(total);
  std::iota(img.begin(), img.end(), Point{0});
  for (Point p = 0; p < part.degree(); ++p) img[offset + p] = static_cast<Point>(offset + part[p]);
  return Permutation(std::move(img));
}

struct DisjointUnion {
  PermGroup group;
  ActionSpace space;
  std::vector<std::size_t> offsets;  // first point of each part
};

/// The external direct product of the parts acting on the disjoint union.
inline DisjointUnion disjoint_union_action(const std::vector<PermGroup>& parts,
                                           const std::vector<ActionSpace>& spaces = {}) {
  if (parts.empty()) throw precondition_error("disjoint union needs at least one part");
  if (!spaces.empty() && spaces.size() != parts.size()) throw precondition_error("one space per part");
  std::size_t total = 0;
  std::vector<std::size_t> offsets;
  for (const auto& p : parts) {
    offsets.push_back(total);
    total += p.degree();
  }
  std::vector<Permutation> gens;
  std::vector<LabelPtr> labels;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& g : parts[i].generators()) gens.push_back(embed_at(g, offsets[i], total));
    for (Point p = 0; p < parts[i].degree(); ++p) {
      LabelPtr inner = spaces.empty() ? make_label(label::Raw{p}) : spaces[i].label_ptr(p);
      labels.push_back(make_label(label::Part{i, std::move(inner)}));
    }
  }
  return {PermGroup(total, std::move(gens)), ActionSpace(std::move(labels)), std::move(offsets)};
}

/// Writes x in H x K (elementwise commuting, coprime orders) as x = h k.
inline std::pair<Permutation, Permutation> split_in_product(const Permutation& x, const PermGroup& h_part,
                                                            const PermGroup& k_part) {
  for (const auto& h : elements(h_part)) {
    auto k = h.inverse() * x;
    if (k_part.contains(k)) return {h, k};
  }
  throw precondition_error("element does not factor through H x K");
}

inline void require_coprime_direct_product(const PermGroup& group, const PermGroup& h_part,
                                           const PermGroup& k_part) {
  require_subgroup(h_part, group, "H");
  require_subgroup(k_part, group, "K");
  const auto nh = h_part.order_u64();
  const auto nk = k_part.order_u64();
  if (std::gcd(nh, nk) != 1) throw precondition_error("|H| and |K| are not coprime");
  if (Order(nh) * nk != group.order()) throw precondition_error("|H||K| differs from |G|");
  for (const auto& a : h_part.generators()) {
    for (const auto& b : k_part.generators()) {
      if (!a.commutes_with(b)) throw precondition_error("H and K do not commute elementwise");
    }
  }
}

struct ProductAction {
  std::vector<Point> omega1;                 // alpha^H, sorted
  std::vector<Point> omega2;                 // alpha^K, sorted
  std::vector<std::pair<Point, Point>> lambda;  // point -> (index in omega1, index in omega2)
};

/// For transitive G = H x K with coprime orders, the map alpha^(hk) -> (alpha^h, alpha^k).
/// Checked to be a well-defined G-equivariant bijection.
inline ProductAction product_action(const PermGroup& group, const PermGroup& h_part, const PermGroup& k_part,
                                    Point alpha) {
  require_coprime_direct_product(group, h_part, k_part);
  if (!group.is_transitive()) throw precondition_error("product action needs a transitive group");
  if (alpha >= group.degree()) throw precondition_error("base point out of range");
  ProductAction out;
  out.omega1 = h_part.orbit(alpha);
  out.omega2 = k_part.orbit(alpha);
  auto index_in = [](const std::vector<Point>& v, Point p) {
    return static_cast<Point>(std::lower_bound(v.begin(), v.end(), p) - v.begin());
  };
  const std::size_t n = group.degree();
  if (out.omega1.size() * out.omega2.size() != n) throw defect_error("orbit sizes do not multiply to the degree");
  std::vector<std::optional<std::pair<Point, Point>>> lambda(n);
  const auto hs = elements(h_part);
  const auto ks = elements(k_part);
  for (const auto& h : hs) {
    for (const auto& k : ks) {
      const Point beta = (h * k)[alpha];
      const std::pair<Point, Point> value{index_in(out.omega1, h[alpha]), index_in(out.omega2, k[alpha])};
      if (lambda[beta] && *lambda[beta] != value) throw defect_error("product map is not well defined");
      lambda[beta] = value;
    }
  }
  std::vector<bool> hit(n, false);
  for (Point b = 0; b < n; ++b) {
    const auto [i, j] = *lambda[b];
    const std::size_t cell = i * out.omega2.size() + j;
    if (hit[cell]) throw defect_error("product map is not injective");
    hit[cell] = true;
    out.lambda.push_back(*lambda[b]);
  }
  for (const auto& g : group.generators()) {
    const auto [h1, k1] = split_in_product(g, h_part, k_part);
    for (Point b = 0; b < n; ++b) {
      const auto [i, j] = out.lambda[b];
      const std::pair<Point, Point> moved{index_in(out.omega1, h1[out.omega1[i]]),
                                          index_in(out.omega2, k1[out.omega2[j]])};
      if (out.lambda[g[b]] != moved) throw defect_error("product map is not equivariant");
    }
  }
  return out;
}

struct QuotientAction {
  PermGroup image;
  ActionSpace blocks;
  PermGroup kernel;
  std::vector<std::size_t> block_of;
};

/// G permuting the orbits of a normal subgroup. The kernel is read off a chain
/// of G acting on blocks and points together, so no element listing is needed.
inline QuotientAction quotient_action(const PermGroup& group, const PermGroup& normal_sub) {
  if (!is_normal(group, normal_sub)) throw precondition_error("H is not normal in G");
  const std::size_t n = group.degree();
  const auto orbits = normal_sub.orbits();
  const std::size_t b = orbits.size();
  std::vector<std::size_t> block_of(n);
  for (std::size_t i = 0; i < b; ++i) {
    for (auto p : orbits[i]) block_of[p] = i;
  }
  std::vector<Permutation> block_gens;
  std::vector<Permutation> joint_gens;
  for (const auto& g : group.generators()) {
    std::vector<Point> img(b);
    for (std::size_t i = 0; i < b; ++i) img[i] = static_cast<Point>(block_of[g[orbits[i].front()]]);
    std::vector<Point> joint(img);
    for (Point p = 0; p < n; ++p) joint.push_back(static_cast<Point>(b + g[p]));
    block_gens.emplace_back(std::move(img));
    joint_gens.emplace_back(std::move(joint));
  }
  const PermGroup joint(b + n, std::move(joint_gens));
  std::vector<Permutation> kernel_gens;
  for (const auto& k : joint.chain().level_generators(b)) {
    std::vector<Point> img(n);
    for (Point p = 0; p < n; ++p) img[p] = static_cast<Point>(k[static_cast<Point>(b + p)] - b);
    kernel_gens.emplace_back(std::move(img));
  }
  std::vector<LabelPtr> labels;
  for (const auto& o : orbits) labels.push_back(make_label(label::Block{o}));
  return {PermGroup(b, std::move(block_gens)), ActionSpace(std::move(labels)), PermGroup(n, std::move(kernel_gens)),
          std::move(block_of)};
}

/// Quotient G/N with a fixed transversal: cosets are discovered breadth-first
/// from N along the canonical generators, and t_u is the first element found.
struct EmbeddingData {
  CosetTable cosets;                       // indexed by least element
  std::vector<std::size_t> order;          // BFS position -> coset index
  std::vector<std::size_t> position;       // coset index -> BFS position
  std::vector<Permutation> transversal;    // by BFS position; transversal[0] = identity
  std::vector<std::vector<std::size_t>> multiplication;  // positions: u * v

  std::size_t size() const noexcept { return transversal.size(); }
  /// psi(x) as a BFS position.
  std::size_t psi(const Permutation& x) const { return position[cosets(x)]; }
  /// f_x(u) = t_u x t_{u psi(x)}^-1, an element of N.
  Permutation cocycle(const Permutation& x, std::size_t u) const {
    const std::size_t v = psi(transversal[u] * x);
    return transversal[u] * x * transversal[v].inverse();
  }
  const Permutation& label(std::size_t u) const { return cosets.representatives[order[u]]; }
};

inline EmbeddingData quotient_data(const PermGroup& group, const PermGroup& normal_sub) {
  EmbeddingData d;
  d.cosets = CosetTable::build(group, normal_sub);
  const std::size_t m = d.cosets.size();
  d.position.assign(m, m);
  const auto gens = group.canonical_generators();
  d.transversal.push_back(Permutation::identity(group.degree()));
  d.order.push_back(d.cosets(d.transversal[0]));
  d.position[d.order[0]] = 0;
  for (std::size_t head = 0; head < d.transversal.size(); ++head) {
    for (const auto& g : gens) {
      Permutation y = d.transversal[head] * g;
      const std::size_t c = d.cosets(y);
      if (d.position[c] != m) continue;
      d.position[c] = d.transversal.size();
      d.order.push_back(c);
      d.transversal.push_back(std::move(y));
    }
  }
  if (d.transversal.size() != m) throw defect_error("coset graph is not connected");
  d.multiplication.assign(m, std::vector<std::size_t>(m));
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) d.multiplication[u][v] = d.psi(d.transversal[u] * d.transversal[v]);
  }
  return d;
}

struct UniversalEmbedding {
  PermGroup image;
  ActionSpace space;
  EmbeddingData data;
  ActionMap map;  // G -> Sym(Delta x K)
  std::size_t delta_size;

  Point point(Point delta, std::size_t k) const { return static_cast<Point>(k * delta_size + delta); }
};

/// G acting on Delta x G/N by (delta, k)^x = (delta^{f_x(k)}, k psi(x)), given a
/// faithful action of the normal subgroup N on Delta.
inline UniversalEmbedding universal_embedding(const PermGroup& group, const PermGroup& normal_sub,
                                              const ActionMap& delta_action,
                                              const ActionSpace* delta_space = nullptr) {
  if (!is_normal(group, normal_sub)) throw precondition_error("N is not normal in G");
  if (!same_group(delta_action.source(), normal_sub)) {
    throw precondition_error("the action on Delta is not an action of N");
  }
  if (!delta_action.faithful()) throw precondition_error("N does not act faithfully on Delta");
  check_enumeration_guard(group);

  EmbeddingData data = quotient_data(group, normal_sub);
  const std::size_t dn = delta_action.target_degree();
  const std::size_t m = data.size();
  std::vector<Permutation> images;
  for (const auto& x : group.generators()) {
    std::vector<Point> img(dn * m);
    for (std::size_t k = 0; k < m; ++k) {
      const Permutation f = data.cocycle(x, k);
      if (!normal_sub.contains(f)) throw defect_error("cocycle value outside N");
      const Permutation& fd = delta_action(f);
      const std::size_t k2 = data.psi(data.transversal[k] * x);
      for (Point d = 0; d < dn; ++d) img[k * dn + d] = static_cast<Point>(k2 * dn + fd[d]);
    }
    images.emplace_back(std::move(img));
  }
  ActionMap map = ActionMap::from_generator_images(group, dn * m, images);
  if (!map.faithful()) throw defect_error("universal embedding is not faithful");

  std::vector<LabelPtr> labels;
  for (std::size_t k = 0; k < m; ++k) {
    for (Point d = 0; d < dn; ++d) {
      LabelPtr inner = delta_space != nullptr ? delta_space->label_ptr(d) : make_label(label::Raw{d});
      labels.push_back(make_label(label::Pair{std::move(inner), data.label(k)}));
    }
  }
  PermGroup image = map.image();
  return {std::move(image), ActionSpace(std::move(labels)), std::move(data), std::move(map), dn};
}

}  // namespace twoclosure
