#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "twoclosure/errors.hpp"
#include "twoclosure/perm_group.hpp"

namespace twoclosure {

using PointPair = std::pair<Point, Point>;

/// The G-orbits on ordered pairs. Colors are numbered in order of first
/// appearance when pairs are scanned lexicographically, so two groups induce
/// the same partition exactly when their color tables are equal.
///
/// Each pair keeps a Schreier label (the generator that first reached it in
/// the breadth-first search of its color), which is enough to rebuild a
/// transporter from the color's representative without storing group elements.
class OrbitalPartition {
 public:
  explicit OrbitalPartition(const PermGroup& group)
      : degree_(group.degree()), generators_(group.canonical_generators()) {
    const std::size_t n = degree_;
    color_.assign(n * n, -1);
    label_.assign(n * n, -1);
    for (const auto& g : generators_) inverses_.push_back(g.inverse());

    std::vector<std::size_t> queue;
    for (std::size_t start = 0; start < n * n; ++start) {
      if (color_[start] >= 0) continue;
      const int c = static_cast<int>(representatives_.size());
      representatives_.push_back(unpack(start));
      color_[start] = c;
      queue.assign(1, start);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto [a, b] = unpack(queue[head]);
        for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
          const auto& g = generators_[gi];
          const std::size_t next = pack(g[a], g[b]);
          if (color_[next] >= 0) continue;
          color_[next] = c;
          label_[next] = static_cast<std::int32_t>(gi);
          queue.push_back(next);
        }
      }
    }
    for (Point a = 0; a < n; ++a) {
      diagonal_rank_ += representatives_[static_cast<std::size_t>(color(a, a))] == PointPair{a, a} ? 1 : 0;
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t rank() const noexcept { return representatives_.size(); }
  /// Number of colors on the diagonal, i.e. the number of orbits on points.
  std::size_t diagonal_rank() const noexcept { return diagonal_rank_; }

  int color(Point a, Point b) const { return color_[pack(a, b)]; }
  const std::vector<int>& colors() const noexcept { return color_; }
  const std::vector<PointPair>& representatives() const noexcept { return representatives_; }

  /// A group element w with representative(color(a,b))^w = (a,b).
  Permutation transporter(Point a, Point b) const {
    if (a >= degree_ || b >= degree_) throw precondition_error("pair out of range");
    std::vector<std::size_t> path;
    std::size_t cur = pack(a, b);
    while (label_[cur] >= 0) {
      const auto gi = static_cast<std::size_t>(label_[cur]);
      path.push_back(gi);
      const auto [x, y] = unpack(cur);
      cur = pack(inverses_[gi][x], inverses_[gi][y]);
    }
    Permutation w = Permutation::identity(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it) w = w * generators_[*it];
    return w;
  }

 private:
  std::size_t pack(Point a, Point b) const noexcept { return static_cast<std::size_t>(a) * degree_ + b; }
  PointPair unpack(std::size_t idx) const noexcept {
    return {static_cast<Point>(idx / degree_), static_cast<Point>(idx % degree_)};
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> inverses_;
  std::vector<int> color_;
  std::vector<std::int32_t> label_;
  std::vector<PointPair> representatives_;
  std::size_t diagonal_rank_ = 0;
};

inline OrbitalPartition orbital_partition(const PermGroup& group) { return OrbitalPartition(group); }

/// Same orbits on ordered pairs.
inline bool two_equivalent(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw precondition_error("degree mismatch in two_equivalent");
  return OrbitalPartition(a).colors() == OrbitalPartition(b).colors();
}

/// For each ordered pair (a,b), an element g of the group with (a,b)^theta = (a,b)^g.
/// Elements are produced on demand from the partition's Schreier labels.
class MembershipEvidence {
 public:
  MembershipEvidence(std::shared_ptr<const OrbitalPartition> partition, Permutation theta)
      : partition_(std::move(partition)), theta_(std::move(theta)) {}

  std::size_t degree() const noexcept { return partition_->degree(); }
  std::size_t size() const noexcept { return degree() * degree(); }
  const Permutation& theta() const noexcept { return theta_; }

  Permutation at(Point a, Point b) const {
    return partition_->transporter(a, b).inverse() * partition_->transporter(theta_[a], theta_[b]);
  }

  /// Re-checks every pair against `group` from scratch: each element must lie in
  /// the group and move the pair exactly as theta does.
  bool verify(const PermGroup& group) const {
    if (group.degree() != degree() || theta_.degree() != degree()) return false;
    const auto n = static_cast<Point>(degree());
    std::vector<Permutation> checked;
    for (Point a = 0; a < n; ++a) {
      for (Point b = 0; b < n; ++b) {
        const Permutation g = at(a, b);
        if (g[a] != theta_[a] || g[b] != theta_[b]) return false;
        if (std::find(checked.begin(), checked.end(), g) != checked.end()) continue;
        if (!group.contains(g)) return false;
        checked.push_back(g);
      }
    }
    return true;
  }

 private:
  std::shared_ptr<const OrbitalPartition> partition_;
  Permutation theta_;
};

struct ClosureMembership {
  bool member = false;
  std::optional<MembershipEvidence> evidence;
};

/// Definitional test: theta keeps every pair inside its color. No degree guard.
inline bool preserves_colors(const Permutation& theta, const OrbitalPartition& partition) {
  if (theta.degree() != partition.degree()) {
    throw precondition_error("permutation degree does not match the partition");
  }
  const auto n = static_cast<Point>(partition.degree());
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < n; ++b) {
      if (partition.color(theta[a], theta[b]) != partition.color(a, b)) return false;
    }
  }
  return true;
}

inline ClosureMembership is_in_two_closure(const Permutation& theta,
                                           std::shared_ptr<const OrbitalPartition> partition,
                                           bool want_evidence = true) {
  ClosureMembership out;
  out.member = preserves_colors(theta, *partition);
  if (out.member && want_evidence) out.evidence.emplace(std::move(partition), theta);
  return out;
}

inline ClosureMembership is_in_two_closure(const Permutation& theta, const PermGroup& group,
                                           bool want_evidence = true) {
  return is_in_two_closure(theta, std::make_shared<const OrbitalPartition>(group), want_evidence);
}

}  // namespace twoclosure
