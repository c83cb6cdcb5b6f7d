#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twoclosure/errors.hpp"

namespace twoclosure {

using Point = std::uint32_t;

/// A bijection on {0, ..., degree-1}. Points are 0-based here and 1-based in
/// every textual form. Products act on the right: p^(g*h) = (p^g)^h.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Throws precondition_error unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw precondition_error("image sequence is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint 0-based cycles.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        Point from = cycle[i];
        if (from >= degree) throw precondition_error("cycle point exceeds degree");
        if (used[from]) throw precondition_error("cycles are not disjoint");
        used[from] = true;
        images[from] = cycle[(i + 1) % cycle.size()];
      }
    }
    return Permutation(std::move(images));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point p) const noexcept { return images_[p]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
    Permutation r;
    r.images_.resize(lhs.images_.size());
    for (std::size_t i = 0; i < lhs.images_.size(); ++i) r.images_[i] = rhs.images_[lhs.images_[i]];
    return r;
  }

  /// x^-1 * this * x
  Permutation conjugate_by(const Permutation& x) const { return x.inverse() * *this * x; }

  Permutation pow(std::int64_t e) const {
    const auto ord = static_cast<std::int64_t>(order());
    e %= ord;
    if (e < 0) e += ord;
    Permutation result(degree());
    Permutation base = *this;
    auto k = static_cast<std::uint64_t>(e);
    while (k != 0) {
      if (k & 1U) result = result * base;
      base = base * base;
      k >>= 1U;
    }
    return result;
  }

  /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (Point start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == start) continue;
      std::vector<Point> cycle;
      for (Point p = start; !seen[p]; p = images_[p]) {
        seen[p] = true;
        cycle.push_back(p);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t ord = 1;
    for (const auto& c : cycles()) ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
    return ord;
  }

  bool commutes_with(const Permutation& other) const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (other.images_[images_[i]] != images_[other.images_[i]]) return false;
    }
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(),
                                                  b.images_.begin(), b.images_.end());
  }

 private:
  std::vector<Point> images_;
};

/// [a,b] = a^-1 b^-1 a b
inline Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

/// Canonical disjoint-cycle form, 1-based, "()" for the identity.
inline std::string to_cycle_string(const Permutation& g) {
  auto cycles = g.cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out;
}

/// Parses 1-based disjoint cycle notation such as "(1,2)(3,4)". Errors carry the
/// 1-based column of the offending character within `text` (line is left 0).
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto fail = [&](const std::string& msg, std::size_t pos) -> void {
    throw parse_error(msg + " at column " + std::to_string(pos + 1), 0, pos + 1);
  };
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('", i);
    const std::size_t open = i++;
    std::vector<Point> cycle;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" is the identity
      skip_ws();
      continue;
    }
    for (;;) {
      skip_ws();
      if (i >= text.size()) fail("unbalanced parenthesis", open);
      if (text[i] < '0' || text[i] > '9') fail("expected a point number", i);
      const std::size_t start = i;
      std::uint64_t value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > (1U << 30)) fail("point number too large", start);
        ++i;
      }
      if (value == 0) fail("points are numbered from 1", start);
      if (value > degree) {
        fail("point " + std::to_string(value) + " exceeds degree " + std::to_string(degree), start);
      }
      const auto p = static_cast<Point>(value - 1);
      if (used[p]) fail("repeated point " + std::to_string(value), start);
      used[p] = true;
      cycle.push_back(p);
      skip_ws();
      if (i >= text.size()) fail("unbalanced parenthesis", open);
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      fail("expected ',' or ')'", i);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return Permutation::from_cycles(degree, cycles);
}

}  // namespace twoclosure

template <>
struct std::hash<twoclosure::Permutation> {
  std::size_t operator()(const twoclosure::Permutation& g) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto p : g.images()) {
      h ^= p;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
