#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "twoclosure/errors.hpp"
#include "twoclosure/permutation.hpp"

namespace twoclosure {

struct Label;
using LabelPtr = std::shared_ptr<const Label>;

namespace label {
/// A bare point of some input action.
struct Raw {
  Point index;
};
/// The right coset H*rep, rep being the least element of the coset.
struct Coset {
  std::string subgroup;
  Permutation representative;
};
/// (inner point, coset of the quotient) as in a wreath-product action.
struct Pair {
  LabelPtr inner;
  Permutation quotient;
};
/// An orbit of a normal subgroup, used as a point of a quotient action.
struct Block {
  std::vector<Point> points;
};
/// A point of the i-th summand of a disjoint union.
struct Part {
  std::size_t part;
  LabelPtr inner;
};
}  // namespace label

struct Label {
  std::variant<label::Raw, label::Coset, label::Pair, label::Block, label::Part> value;
};

inline std::string to_string(const Label& l) {
  struct Visitor {
    std::string operator()(const label::Raw& r) const { return std::to_string(r.index + 1); }
    std::string operator()(const label::Coset& c) const {
      return c.subgroup + "*" + to_cycle_string(c.representative);
    }
    std::string operator()(const label::Pair& p) const {
      return "(" + to_string(*p.inner) + ", N*" + to_cycle_string(p.quotient) + ")";
    }
    std::string operator()(const label::Block& b) const {
      std::string s = "{";
      for (std::size_t i = 0; i < b.points.size(); ++i) {
        if (i != 0) s += ",";
        s += std::to_string(b.points[i] + 1);
      }
      return s + "}";
    }
    std::string operator()(const label::Part& p) const {
      return "part" + std::to_string(p.part + 1) + ":" + to_string(*p.inner);
    }
  };
  return std::visit(Visitor{}, l.value);
}

inline LabelPtr make_label(label::Raw v) { return std::make_shared<const Label>(Label{v}); }
inline LabelPtr make_label(label::Coset v) { return std::make_shared<const Label>(Label{std::move(v)}); }
inline LabelPtr make_label(label::Pair v) { return std::make_shared<const Label>(Label{std::move(v)}); }
inline LabelPtr make_label(label::Block v) { return std::make_shared<const Label>(Label{std::move(v)}); }
inline LabelPtr make_label(label::Part v) { return std::make_shared<const Label>(Label{std::move(v)}); }

/// Labeled point set: point i carries labels()[i], and every label is distinct.
class ActionSpace {
 public:
  ActionSpace() = default;

  explicit ActionSpace(std::vector<LabelPtr> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, inserted] = index_.emplace(to_string(*labels_[i]), static_cast<Point>(i));
      if (!inserted) throw defect_error("duplicate label " + it->first + " in action space");
    }
  }

  static ActionSpace raw(std::size_t n) {
    std::vector<LabelPtr> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(make_label(label::Raw{static_cast<Point>(i)}));
    return ActionSpace(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const Label& operator[](Point p) const { return *labels_.at(p); }
  const LabelPtr& label_ptr(Point p) const { return labels_.at(p); }
  const std::vector<LabelPtr>& labels() const noexcept { return labels_; }

  Point index_of(const Label& l) const {
    auto it = index_.find(to_string(l));
    if (it == index_.end()) throw precondition_error("label " + to_string(l) + " not in action space");
    return it->second;
  }

 private:
  std::vector<LabelPtr> labels_;
  std::map<std::string, Point> index_;
};

}  // namespace twoclosure
