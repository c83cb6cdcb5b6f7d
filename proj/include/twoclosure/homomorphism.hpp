#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twoclosure/errors.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"

namespace twoclosure {

/// A homomorphism from a small permutation group into Sym(target_degree),
/// stored as a full element table. Construction walks the Cayley graph of the
/// source and checks every edge, so a map that exists is a homomorphism.
class ActionMap {
 public:
  using GeneratorImage = std::pair<Permutation, Permutation>;

  /// Extends generator -> image assignments. The listed sources must generate
  /// `source`; inconsistent assignments throw precondition_error.
  ActionMap(PermGroup source, std::size_t target_degree, std::vector<GeneratorImage> assignments)
      : source_(std::move(source)), target_degree_(target_degree), assignments_(std::move(assignments)) {
    check_enumeration_guard(source_);
    for (const auto& [g, img] : assignments_) {
      if (g.degree() != source_.degree() || img.degree() != target_degree_) {
        throw precondition_error("generator assignment has the wrong degree");
      }
      if (!source_.contains(g)) throw precondition_error("assigned element is not in the source group");
    }
    const auto id = Permutation::identity(source_.degree());
    table_.emplace(id, Permutation::identity(target_degree_));
    std::vector<Permutation> queue{id};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Permutation x = queue[head];
      const Permutation fx = table_.at(x);
      for (const auto& [g, img] : assignments_) {
        Permutation y = x * g;
        Permutation fy = fx * img;
        auto it = table_.find(y);
        if (it == table_.end()) {
          table_.emplace(y, std::move(fy));
          queue.push_back(std::move(y));
        } else if (it->second != fy) {
          throw precondition_error("generator images do not define a homomorphism");
        }
      }
    }
    if (Order(table_.size()) != source_.order()) {
      throw precondition_error("assigned elements do not generate the source group");
    }
  }

  /// Images of source.generators() in order.
  static ActionMap from_generator_images(const PermGroup& source, std::size_t target_degree,
                                         const std::vector<Permutation>& images) {
    if (images.size() != source.generators().size()) {
      throw precondition_error("need one image per generator");
    }
    std::vector<GeneratorImage> a;
    for (std::size_t i = 0; i < images.size(); ++i) a.emplace_back(source.generators()[i], images[i]);
    return ActionMap(source, target_degree, std::move(a));
  }

  /// Tabulates `f` on every element and checks f(xg) = f(x)f(g) for all
  /// elements x and generators g.
  static ActionMap from_function(const PermGroup& source, std::size_t target_degree,
                                 const std::function<Permutation(const Permutation&)>& f) {
    std::vector<GeneratorImage> a;
    for (const auto& g : source.generators()) a.emplace_back(g, f(g));
    ActionMap m(source, target_degree, std::move(a));
    for (const auto& [x, fx] : m.table_) {
      if (f(x) != fx) throw precondition_error("function is not a homomorphism");
    }
    return m;
  }

  const PermGroup& source() const noexcept { return source_; }
  std::size_t target_degree() const noexcept { return target_degree_; }
  const std::vector<GeneratorImage>& assignments() const noexcept { return assignments_; }

  const Permutation& operator()(const Permutation& x) const {
    auto it = table_.find(x);
    if (it == table_.end()) throw precondition_error("element is not in the source group");
    return it->second;
  }

  PermGroup image() const {
    std::vector<Permutation> gens;
    for (const auto& [g, img] : assignments_) gens.push_back(img);
    return PermGroup(target_degree_, std::move(gens));
  }

  PermGroup kernel() const {
    std::vector<Permutation> k;
    for (const auto& [x, fx] : table_) {
      if (fx.is_identity()) k.push_back(x);
    }
    std::sort(k.begin(), k.end());
    return group_from_elements(source_.degree(), k);
  }

  bool faithful() const {
    for (const auto& [x, fx] : table_) {
      if (fx.is_identity() && !x.is_identity()) return false;
    }
    return true;
  }

  /// Composition: first this map, then `next` (whose source must be this image).
  ActionMap then(const ActionMap& next) const {
    std::vector<GeneratorImage> a;
    for (const auto& [g, img] : assignments_) a.emplace_back(g, next(img));
    return ActionMap(source_, next.target_degree(), std::move(a));
  }

  /// The same map restricted to a subgroup of the source.
  ActionMap restrict_to(const PermGroup& sub) const {
    require_subgroup(sub, source_, "restriction");
    std::vector<GeneratorImage> a;
    for (const auto& g : sub.generators()) a.emplace_back(g, (*this)(g));
    return ActionMap(sub, target_degree_, std::move(a));
  }

 private:
  PermGroup source_;
  std::size_t target_degree_;
  std::vector<GeneratorImage> assignments_;
  std::unordered_map<Permutation, Permutation> table_;
};

}  // namespace twoclosure
