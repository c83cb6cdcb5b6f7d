#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoclosure/errors.hpp"
#include "twoclosure/orbital.hpp"
#include "twoclosure/perm_group.hpp"

namespace twoclosure {

/// Full closure search refuses larger degrees; membership testing has no limit.
inline constexpr std::size_t kClosureDegreeGuard = 32;

namespace detail {

/// Backtracking search for color-preserving permutations with prescribed images
/// for a prefix of the points. Candidate sets are bitmasks; assigning x -> y
/// intersects every open candidate set with the points that sit in the right
/// color relative to y (forward checking), and rejects the step unless the
/// color-degree profiles of x and y over the still-open points agree.
class ColorAutomorphismSearch {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  explicit ColorAutomorphismSearch(const OrbitalPartition& partition)
      : n_(partition.degree()), rank_(partition.rank()), color_(partition.colors()) {
    if (n_ > kMaxPoints) throw guard_exceeded("search supports at most 64 points");
    row_mask_.assign(n_ * rank_, 0);
    col_mask_.assign(n_ * rank_, 0);
    for (std::size_t q = 0; q < n_; ++q) {
      for (std::size_t w = 0; w < n_; ++w) {
        row_mask_[q * rank_ + c(q, w)] |= bit(w);
        col_mask_[q * rank_ + c(w, q)] |= bit(w);
      }
    }
    // x may go to y only if both carry the same diagonal color and the same
    // row and column color multisets.
    std::vector<std::vector<int>> rows(n_), cols(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t z = 0; z < n_; ++z) {
        rows[x].push_back(c(x, z));
        cols[x].push_back(c(z, x));
      }
      std::sort(rows[x].begin(), rows[x].end());
      std::sort(cols[x].begin(), cols[x].end());
    }
    static_cand_.assign(n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        if (c(x, x) == c(y, y) && rows[x] == rows[y] && cols[x] == cols[y]) static_cand_[x] |= bit(y);
      }
    }
    tally_.assign(rank_, 0);
  }

  /// Whether x may be sent to y at all.
  bool compatible(std::size_t x, std::size_t y) const { return (static_cand_[x] & bit(y)) != 0; }

  /// A color-preserving permutation fixing 0..k-1 and sending k to gamma.
  std::optional<Permutation> find(std::size_t k, std::size_t gamma) {
    State s;
    s.used = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      s.image[x] = -1;
      s.cand[x] = static_cand_[x];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (!assign(s, j, j)) return std::nullopt;
    }
    if (!assign(s, k, gamma)) return std::nullopt;
    return search(s);
  }

 private:
  struct State {
    std::array<std::uint64_t, kMaxPoints> cand;
    std::array<int, kMaxPoints> image;
    std::uint64_t used;
  };

  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }
  std::size_t c(std::size_t a, std::size_t b) const { return static_cast<std::size_t>(color_[a * n_ + b]); }

  bool assign(State& s, std::size_t x, std::size_t y) {
    if (s.image[x] >= 0 || (s.cand[x] & bit(y)) == 0 || (s.used & bit(y)) != 0) return false;
    s.image[x] = static_cast<int>(y);
    s.used |= bit(y);
    s.cand[x] = bit(y);
    if (!degrees_match(s, x, y)) return false;
    for (std::size_t z = 0; z < n_; ++z) {
      if (s.image[z] >= 0) continue;
      s.cand[z] &= row_mask_[y * rank_ + c(x, z)] & col_mask_[y * rank_ + c(z, x)] & ~s.used;
      if (s.cand[z] == 0) return false;
    }
    return true;
  }

  /// Colors from x to open points must match colors from y to unused points,
  /// as multisets, in both directions.
  bool degrees_match(const State& s, std::size_t x, std::size_t y) {
    bool ok = true;
    for (int dir = 0; dir < 2 && ok; ++dir) {
      touched_.clear();
      for (std::size_t z = 0; z < n_; ++z) {
        if (s.image[z] < 0) {
          const auto col = dir == 0 ? c(x, z) : c(z, x);
          if (tally_[col]++ == 0) touched_.push_back(col);
        }
        if ((s.used & bit(z)) == 0) {
          const auto col = dir == 0 ? c(y, z) : c(z, y);
          if (tally_[col]-- == 0) touched_.push_back(col);
        }
      }
      for (auto col : touched_) {
        if (tally_[col] != 0) ok = false;
        tally_[col] = 0;
      }
    }
    return ok;
  }

  std::optional<Permutation> search(State& s) {
    std::size_t best = n_;
    int best_count = 65;
    for (std::size_t x = 0; x < n_; ++x) {
      if (s.image[x] >= 0) continue;
      const int count = std::popcount(s.cand[x]);
      if (count < best_count) {
        best_count = count;
        best = x;
      }
    }
    if (best == n_) return finish(s);
    std::uint64_t options = s.cand[best];
    while (options != 0) {
      const auto y = static_cast<std::size_t>(std::countr_zero(options));
      options &= options - 1;
      State next = s;
      if (!assign(next, best, y)) continue;
      if (auto found = search(next)) return found;
    }
    return std::nullopt;
  }

  std::optional<Permutation> finish(const State& s) const {
    std::vector<Point> images(n_);
    for (std::size_t x = 0; x < n_; ++x) images[x] = static_cast<Point>(s.image[x]);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (c(images[a], images[b]) != c(a, b)) throw defect_error("closure search produced a non-automorphism");
      }
    }
    return Permutation(std::move(images));
  }

  std::size_t n_;
  std::size_t rank_;
  std::vector<int> color_;
  std::vector<std::uint64_t> row_mask_;
  std::vector<std::uint64_t> col_mask_;
  std::vector<std::uint64_t> static_cand_;
  std::vector<int> tally_;
  std::vector<std::size_t> touched_;
};

}  // namespace detail

/// The automorphism group of G's orbital coloring.
///
/// Works down the chain from the last point: once the stabilizer of 0..k is
/// complete, every candidate image gamma of k is either already reached by the
/// current group, ruled out with its whole orbit under that stabilizer, or
/// realized by a searched permutation that is then added as a generator.
inline PermGroup two_closure(const PermGroup& group) {
  const std::size_t n = group.degree();
  if (n > kClosureDegreeGuard) {
    throw guard_exceeded("closure search is limited to degree " + std::to_string(kClosureDegreeGuard) +
                         ", got " + std::to_string(n));
  }
  const OrbitalPartition partition(group);
  detail::ColorAutomorphismSearch search(partition);
  StabilizerChain chain(n, group.generators());
  std::vector<Permutation> found;

  for (std::size_t k = n; k-- > 0;) {
    std::vector<bool> failed(n, false);
    for (std::size_t gamma = k + 1; gamma < n; ++gamma) {
      if (failed[gamma] || !search.compatible(k, gamma)) continue;
      if (chain.transversal(k, static_cast<Point>(gamma)) != nullptr) continue;
      if (auto theta = search.find(k, gamma)) {
        chain.add_generator(*theta);
        found.push_back(std::move(*theta));
        continue;
      }
      PermGroup deeper(n, chain.level_generators(k + 1));
      for (auto p : deeper.orbit(static_cast<Point>(gamma))) failed[p] = true;
    }
  }

  std::vector<Permutation> gens = group.generators();
  gens.insert(gens.end(), found.begin(), found.end());
  PermGroup closure(n, std::move(gens));
  if (closure.order() != chain.order()) throw defect_error("closure chain rebuilt with a different order");
  return closure;
}

struct ClosedCheck {
  bool closed = false;
  std::optional<Permutation> witness;
  PermGroup closure;
};

namespace detail {

/// Witness preference: fewest moved points, then the smallest moved-point set,
/// then image order. Keeps reported witnesses short and stable.
inline bool simpler_witness(const Permutation& a, const Permutation& b) {
  auto support = [](const Permutation& g) {
    std::vector<Point> s;
    for (Point p = 0; p < g.degree(); ++p) {
      if (g[p] != p) s.push_back(p);
    }
    return s;
  };
  const auto sa = support(a);
  const auto sb = support(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

inline constexpr std::uint64_t kWitnessScanLimit = 20000;

}  // namespace detail

/// Compares |closure| with |G|. When they differ the witness is the simplest
/// element of the closure outside G (see simpler_witness); closures too large
/// to list fall back to the simplest generator outside G.
inline ClosedCheck is_two_closed_on(const PermGroup& group) {
  ClosedCheck out;
  out.closure = two_closure(group);
  out.closed = out.closure.order() == group.order();
  if (out.closed) return out;
  auto consider = [&](const Permutation& g) {
    if (group.contains(g)) return;
    if (!out.witness || detail::simpler_witness(g, *out.witness)) out.witness = g;
  };
  if (out.closure.order() <= Order(detail::kWitnessScanLimit)) {
    out.closure.chain().for_each_element(consider);
  } else {
    for (const auto& g : out.closure.generators()) consider(g);
    for (const auto& g : out.closure.chain().strong_generators()) consider(g);
  }
  if (!out.witness) throw defect_error("closure is larger but every generator lies in G");
  return out;
}

}  // namespace twoclosure
