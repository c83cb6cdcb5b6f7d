#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twoclosure/errors.hpp"
#include "twoclosure/permutation.hpp"

namespace twoclosure {

using Order = boost::multiprecision::cpp_int;

/// Deterministic Schreier-Sims over the full base 0, 1, ..., degree-1.
///
/// Level i holds the fundamental orbit of point i under the strong generators
/// that fix 0..i-1, with an explicit transversal. Levels with a trivial orbit
/// cost nothing beyond a fixed-point test when sifting, so the nontrivial base
/// points always appear in increasing order and the chain depends only on the
/// generator sequence.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree), levels_(degree) {
    for (std::size_t i = 0; i < degree_; ++i) reset_level(i);
  }

  StabilizerChain(std::size_t degree, std::span<const Permutation> generators)
      : StabilizerChain(degree) {
    for (const auto& g : generators) add_generator(g);
  }

  std::size_t degree() const noexcept { return degree_; }

  struct SiftResult {
    Permutation residue;
    std::size_t level;  // == degree when the residue is the identity
  };

  SiftResult sift(const Permutation& g, std::size_t from_level = 0) const {
    Permutation h = g;
    for (std::size_t i = from_level; i < degree_; ++i) {
      const Point beta = h[static_cast<Point>(i)];
      if (beta == i) continue;
      const auto& lv = levels_[i];
      const int idx = lv.rep_index[beta];
      if (idx < 0) return {std::move(h), i};
      h = h * lv.rep_inverses[static_cast<std::size_t>(idx)];
    }
    return {std::move(h), degree_};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).level == degree_;
  }

  /// Adds g to the group; returns false when g was already a member.
  bool add_generator(const Permutation& g) {
    if (g.degree() != degree_) throw precondition_error("generator degree mismatch");
    auto [residue, level] = sift(g);
    if (level == degree_) return false;
    insert_strong_generator(std::move(residue), level);
    complete_from(level);
    return true;
  }

  Order order() const {
    Order o = 1;
    for (const auto& lv : levels_) o *= lv.orbit.size();
    return o;
  }

  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }

  /// Points whose fundamental orbit is nontrivial, ascending.
  std::vector<Point> base() const {
    std::vector<Point> b;
    for (std::size_t i = 0; i < degree_; ++i) {
      if (levels_[i].orbit.size() > 1) b.push_back(static_cast<Point>(i));
    }
    return b;
  }

  std::span<const Point> fundamental_orbit(std::size_t level) const { return levels_[level].orbit; }

  /// Strong generators fixing 0..level-1 pointwise; they generate that stabilizer.
  std::vector<Permutation> level_generators(std::size_t level) const {
    std::vector<Permutation> out;
    if (level >= degree_) return out;
    for (auto idx : levels_[level].generators) out.push_back(strong_[idx]);
    return out;
  }

  /// Transversal element u with level^u = point, or nullptr when point is outside the orbit.
  const Permutation* transversal(std::size_t level, Point point) const {
    const int idx = levels_[level].rep_index[point];
    return idx < 0 ? nullptr : &levels_[level].reps[static_cast<std::size_t>(idx)];
  }

  /// Visits every element exactly once, in a fixed order.
  template <typename F>
  void for_each_element(F&& visit) const {
    std::vector<std::size_t> nontrivial;
    for (std::size_t i = 0; i < degree_; ++i) {
      if (levels_[i].orbit.size() > 1) nontrivial.push_back(i);
    }
    // g = u_deepest * ... * u_top
    auto recurse = [&](auto&& self, std::size_t depth, const Permutation& acc) -> void {
      if (depth == 0) {
        visit(acc);
        return;
      }
      const auto& lv = levels_[nontrivial[depth - 1]];
      for (const auto& u : lv.reps) self(self, depth - 1, acc * u);
    };
    recurse(recurse, nontrivial.size(), Permutation::identity(degree_));
  }

 private:
  struct Level {
    std::vector<Point> orbit;
    std::vector<int> rep_index;  // point -> index into reps, -1 outside orbit
    std::vector<Permutation> reps;
    std::vector<Permutation> rep_inverses;
    std::vector<std::size_t> generators;  // indices into strong_
  };

  void reset_level(std::size_t i) {
    auto& lv = levels_[i];
    lv.orbit.assign(1, static_cast<Point>(i));
    lv.rep_index.assign(degree_, -1);
    lv.rep_index[i] = 0;
    lv.reps.assign(1, Permutation::identity(degree_));
    lv.rep_inverses = lv.reps;
  }

  void rebuild_level(std::size_t i) {
    reset_level(i);
    auto& lv = levels_[i];
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      const Point beta = lv.orbit[head];
      // copy: reps may reallocate while we append
      const Permutation u = lv.reps[static_cast<std::size_t>(lv.rep_index[beta])];
      for (auto gi : lv.generators) {
        const Point gamma = strong_[gi][beta];
        if (lv.rep_index[gamma] >= 0) continue;
        lv.rep_index[gamma] = static_cast<int>(lv.reps.size());
        lv.orbit.push_back(gamma);
        lv.reps.push_back(u * strong_[gi]);
        lv.rep_inverses.push_back(lv.reps.back().inverse());
      }
    }
  }

  /// g fixes 0..level-1 and moves `level`.
  void insert_strong_generator(Permutation g, std::size_t level) {
    const std::size_t idx = strong_.size();
    strong_.push_back(std::move(g));
    for (std::size_t i = 0; i <= level; ++i) {
      levels_[i].generators.push_back(idx);
      rebuild_level(i);
    }
  }

  /// Restores the Schreier-Sims condition assuming every level above `top` is complete.
  void complete_from(std::size_t top) {
    std::size_t i = top + 1;
    while (i-- > 0) {
      bool restarted = false;
      const auto& lv = levels_[i];
      for (std::size_t oi = 0; oi < lv.orbit.size() && !restarted; ++oi) {
        const Point beta = lv.orbit[oi];
        const auto& u = lv.reps[static_cast<std::size_t>(lv.rep_index[beta])];
        for (std::size_t k = 0; k < lv.generators.size(); ++k) {
          const auto& s = strong_[lv.generators[k]];
          const Point image = s[beta];
          const auto& v_inv = lv.rep_inverses[static_cast<std::size_t>(lv.rep_index[image])];
          Permutation schreier = u * s * v_inv;
          auto [residue, level] = sift(schreier, i + 1);
          if (level == degree_) continue;
          insert_strong_generator(std::move(residue), level);
          i = level + 1;  // recheck from the level that changed
          restarted = true;
          break;
        }
      }
    }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
};

/// A permutation group given by generators, with its stabilizer chain built eagerly.
/// Immutable after construction; copies share the chain.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}

  /// Throws precondition_error when a generator's degree differs from `degree`.
  PermGroup(std::size_t degree, std::vector<Permutation> generators) : degree_(degree) {
    for (auto& g : generators) {
      if (g.degree() != degree) {
        throw precondition_error("generator degree " + std::to_string(g.degree()) +
                                 " does not match group degree " + std::to_string(degree));
      }
      if (g.is_identity()) continue;
      if (std::find(generators_.begin(), generators_.end(), g) != generators_.end()) continue;
      generators_.push_back(std::move(g));
    }
    chain_ = std::make_shared<const StabilizerChain>(degree_, generators_);
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  static PermGroup symmetric(std::size_t degree) {
    std::vector<Permutation> gens;
    if (degree >= 2) {
      std::vector<Point> cyc(degree);
      for (std::size_t i = 0; i < degree; ++i) cyc[i] = static_cast<Point>(i);
      gens.push_back(Permutation::from_cycles(degree, {cyc}));
      gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
    }
    return PermGroup(degree, std::move(gens));
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const StabilizerChain& chain() const noexcept { return *chain_; }

  Order order() const { return chain_->order(); }

  /// Order as a machine integer; throws guard_exceeded when it does not fit.
  std::uint64_t order_u64() const {
    const Order o = order();
    if (o > Order(UINT64_MAX)) throw guard_exceeded("group order exceeds 64 bits");
    return o.convert_to<std::uint64_t>();
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) {
      throw precondition_error("permutation degree does not match group degree");
    }
    return chain_->contains(g);
  }

  bool is_trivial() const noexcept { return chain_->strong_generators().empty(); }

  /// Strong generators sorted lexicographically by image sequence.
  std::vector<Permutation> canonical_generators() const {
    auto gens = chain_->strong_generators();
    std::sort(gens.begin(), gens.end());
    return gens;
  }

  std::vector<Point> orbit(Point alpha) const {
    check_point(alpha);
    std::vector<bool> seen(degree_, false);
    std::vector<Point> orb{alpha};
    seen[alpha] = true;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const auto& g : generators_) {
        const Point next = g[orb[head]];
        if (!seen[next]) {
          seen[next] = true;
          orb.push_back(next);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    return orb;
  }

  /// Orbits ordered by their smallest point.
  std::vector<std::vector<Point>> orbits() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(degree_, false);
    for (Point p = 0; p < degree_; ++p) {
      if (seen[p]) continue;
      auto orb = orbit(p);
      for (auto q : orb) seen[q] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const { return degree_ <= 1 || orbit(0).size() == degree_; }

  /// Point stabilizer via Schreier generators of the orbit transversal.
  PermGroup stabilizer(Point alpha) const {
    check_point(alpha);
    std::vector<int> rep_index(degree_, -1);
    std::vector<Permutation> reps{Permutation::identity(degree_)};
    std::vector<Point> orb{alpha};
    rep_index[alpha] = 0;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      const Permutation u = reps[static_cast<std::size_t>(rep_index[orb[head]])];
      for (const auto& g : generators_) {
        const Point next = g[orb[head]];
        if (rep_index[next] >= 0) continue;
        rep_index[next] = static_cast<int>(reps.size());
        orb.push_back(next);
        reps.push_back(u * g);
      }
    }
    StabilizerChain stab(degree_);
    for (auto beta : orb) {
      const auto& u = reps[static_cast<std::size_t>(rep_index[beta])];
      for (const auto& g : generators_) {
        const auto& v = reps[static_cast<std::size_t>(rep_index[g[beta]])];
        stab.add_generator(u * g * v.inverse());
      }
    }
    return PermGroup(degree_, stab.strong_generators());
  }

  /// Pointwise stabilizer of {0, ..., k-1}, read straight off the chain.
  PermGroup prefix_stabilizer(std::size_t k) const {
    return PermGroup(degree_, chain_->level_generators(k));
  }

  /// Every element, sorted by image sequence. Only sensible for small groups;
  /// callers apply their own guards.
  std::vector<Permutation> list_elements() const {
    std::vector<Permutation> out;
    chain_->for_each_element([&](const Permutation& g) { out.push_back(g); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_point(Point alpha) const {
    if (alpha >= degree_) {
      throw precondition_error("point " + std::to_string(alpha + 1) + " out of range");
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const StabilizerChain> chain_;
};

inline PermGroup build_group(std::size_t degree, std::vector<Permutation> generators) {
  return PermGroup(degree, std::move(generators));
}

struct OrderAndMembership {
  Order order;
  bool contains;
};

inline OrderAndMembership order_and_membership(const PermGroup& group, const Permutation& g) {
  return {group.order(), group.contains(g)};
}

struct OrbitAndStabilizer {
  std::vector<Point> orbit;
  PermGroup stabilizer;
};

inline OrbitAndStabilizer orbits_and_stabilizer(const PermGroup& group, Point alpha) {
  return {group.orbit(alpha), group.stabilizer(alpha)};
}

inline bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) return false;
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [&](const Permutation& x) { return g.contains(x); });
}

/// Equal as subsets of Sym(degree).
inline bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b);
}

inline PermGroup join(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw precondition_error("degree mismatch in join");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), std::move(gens));
}

/// x^-1 G x
inline PermGroup conjugate(const PermGroup& group, const Permutation& x) {
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) gens.push_back(g.conjugate_by(x));
  return PermGroup(group.degree(), std::move(gens));
}

/// Transports G along the bijection point p -> relabel[p].
inline PermGroup relabel(const PermGroup& group, const Permutation& relabeling) {
  return conjugate(group, relabeling);
}

}  // namespace twoclosure
