#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "twoclosure/catalog.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/constructions.hpp"
#include "twoclosure/errors.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"
#include "twoclosure/witnesses.hpp"

namespace twoclosure {

enum class Status { TwoClosedGroup, NotTwoClosedGroup, NotNilpotent };

enum class Reason {
  Cyclic,
  QuaternionTimesOddCyclic,
  NoncyclicCenter,
  NoncyclicSylowOdd,
  TwoGroupNotCyclicOrQuaternion,
  SplitAbelianComplement,
  NotNilpotent,
};

inline std::string to_string(Status s) {
  switch (s) {
    case Status::TwoClosedGroup: return "TwoClosedGroup";
    case Status::NotTwoClosedGroup: return "NotTwoClosedGroup";
    case Status::NotNilpotent: return "NotNilpotent";
  }
  return "?";
}

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::Cyclic: return "Cyclic";
    case Reason::QuaternionTimesOddCyclic: return "QuaternionTimesOddCyclic";
    case Reason::NoncyclicCenter: return "NoncyclicCenter";
    case Reason::NoncyclicSylowOdd: return "NoncyclicSylowOdd";
    case Reason::TwoGroupNotCyclicOrQuaternion: return "TwoGroupNotCyclicOrQuaternion";
    case Reason::SplitAbelianComplement: return "SplitAbelianComplement";
    case Reason::NotNilpotent: return "NotNilpotent";
  }
  return "?";
}

struct Verdict {
  Status status;
  Reason reason;
  std::optional<WitnessCertificate> certificate;
};

/// Order 2^n with n >= 3, noncyclic, with a single involution.
inline bool is_generalized_quaternion(const PermGroup& p) {
  const auto n = p.order_u64();
  if (!is_prime_power(n, 2)) throw precondition_error("not a 2-group");
  if (n < 8 || is_cyclic(p)) return false;
  const auto profile = order_profile(p);
  auto it = profile.find(2);
  return it != profile.end() && it->second == 1;
}

struct CenterTest {
  bool passes = false;
  std::optional<WitnessCertificate> certificate;
};

namespace detail {

/// Carries a certificate for the Sylow factor P back to G when P is proper.
inline WitnessCertificate on_factor(WitnessCertificate cert, const PermGroup& group, const PermGroup& factor,
                                    std::uint64_t p) {
  if (factor.order() == group.order()) return cert;
  return lift_certificate(std::move(cert), group, factor, p);
}

/// G = MH with M normal, H abelian and core-free, M and H meeting trivially;
/// the pair giving the smallest construction degree, then lattice order.
inline std::optional<WitnessCertificate> semidirect_from_lattice(const PermGroup& group) {
  if (group.order() > Order(kLatticeGuard)) return std::nullopt;
  const auto lattice = subgroup_lattice(group);
  const std::uint64_t n = group.order_u64();
  const LatticeEntry* best_m = nullptr;
  const LatticeEntry* best_h = nullptr;
  std::uint64_t best_degree = 0;
  for (const auto& h : lattice.subgroups) {
    if (h.group.is_trivial() || h.core_members.count() != 1 || !is_abelian(h.group)) continue;
    const std::uint64_t nh = h.group.order_u64();
    std::uint64_t cycles = 0;
    for (const auto& x : cyclic_decomposition(h.group)) cycles += x.order();
    for (const auto& m : lattice.subgroups) {
      if (!m.normal || m.group.order_u64() * nh != n || (m.members & h.members).count() != 1) continue;
      const std::uint64_t degree = n / nh + cycles;
      if (best_m == nullptr || degree < best_degree) {
        best_m = &m;
        best_h = &h;
        best_degree = degree;
      }
    }
  }
  if (best_m == nullptr) return std::nullopt;
  return semidirect_witness(group, best_m->group, best_h->group);
}

struct Routed {
  Reason reason;
  WitnessCertificate certificate;
};

inline Routed route(const PermGroup& group) {
  const auto sd = sylow_decomposition(group);
  if (!sd.nilpotent) throw precondition_error("group is not nilpotent");
  // noncyclic center: a Sylow factor with noncyclic center carries it
  for (const auto& [p, sylow] : sd.sylows) {
    if (!is_cyclic(sylow) && is_abelian(sylow)) {
      return {Reason::NoncyclicCenter, on_factor(abelian_witness(sylow), group, sylow, p)};
    }
    if (!is_cyclic(center(sylow))) {
      return {Reason::NoncyclicCenter, on_factor(center_witness(sylow), group, sylow, p)};
    }
  }
  for (const auto& [p, sylow] : sd.sylows) {
    if (is_cyclic(sylow)) continue;
    if (p == 2) {
      if (is_generalized_quaternion(sylow)) continue;
      if (auto v4 = find_rank_two_normal(sylow, 2)) {
        return {Reason::TwoGroupNotCyclicOrQuaternion, on_factor(twogroup_witness(sylow, *v4), group, sylow, p)};
      }
      if (auto c = semidirect_from_lattice(sylow)) {
        return {Reason::TwoGroupNotCyclicOrQuaternion, on_factor(std::move(*c), group, sylow, p)};
      }
    } else if (auto n = find_rank_two_normal(sylow, p)) {
      return {Reason::NoncyclicSylowOdd, on_factor(podd_witness(sylow, *n), group, sylow, p)};
    }
  }
  if (auto c = semidirect_from_lattice(group)) return {Reason::SplitAbelianComplement, std::move(*c)};
  throw defect_error("no witness construction applies to a group that is not 2-closed");
}

inline bool closed_by_classification(const PermGroup& group, const SylowDecomposition& sd, Reason& reason) {
  if (is_cyclic(group)) {
    reason = Reason::Cyclic;
    return true;
  }
  for (const auto& [p, sylow] : sd.sylows) {
    if (p == 2 ? !is_generalized_quaternion(sylow) : !is_cyclic(sylow)) return false;
  }
  if (sd.sylows.count(2) == 0) return false;
  reason = Reason::QuaternionTimesOddCyclic;
  return true;
}

}  // namespace detail

/// A certificate for a nilpotent group that is not 2-closed. Tries, in order:
/// a Sylow factor with noncyclic center, a Klein four or C_p x C_p normal
/// subgroup of a Sylow factor, an abelian core-free complement of a Sylow
/// factor, and of the whole group.
inline WitnessCertificate not_two_closed_witness(const PermGroup& group) {
  check_enumeration_guard(group);
  const auto sd = sylow_decomposition(group);
  if (!sd.nilpotent) throw precondition_error("group is not nilpotent");
  Reason reason{};
  if (detail::closed_by_classification(group, sd, reason)) throw precondition_error("input is a 2-closed group");
  return detail::route(group).certificate;
}

inline Verdict classify_nilpotent(const PermGroup& group) {
  check_enumeration_guard(group);
  const auto sd = sylow_decomposition(group);
  if (!sd.nilpotent) return {Status::NotNilpotent, Reason::NotNilpotent, std::nullopt};
  Reason reason{};
  if (detail::closed_by_classification(group, sd, reason)) return {Status::TwoClosedGroup, reason, std::nullopt};
  auto routed = detail::route(group);
  const auto check = routed.certificate.validate();
  if (!check.valid) throw defect_error("router produced an invalid certificate: " + check.reason);
  return {Status::NotTwoClosedGroup, routed.reason, std::move(routed.certificate)};
}

/// Passes iff Z(G) is cyclic; otherwise attaches a certificate built on a
/// Sylow factor with noncyclic center (lifted to G when the factor is proper).
inline CenterTest center_cyclic_test(const PermGroup& group) {
  check_enumeration_guard(group);
  if (is_cyclic(center(group))) return {true, std::nullopt};
  const auto sd = sylow_decomposition(group);
  if (!sd.nilpotent) return {false, center_witness(group)};
  for (const auto& [p, sylow] : sd.sylows) {
    if (!is_cyclic(center(sylow))) return {false, detail::on_factor(center_witness(sylow), group, sylow, p)};
  }
  throw defect_error("noncyclic center but every Sylow factor has a cyclic center");
}

struct GenholtResult {
  bool certified = false;
  bool abelian_part_closed = false;
  bool quotient_closed = false;
  std::string detail;
};

/// For G = H x K on Omega with coprime orders and H abelian: G is 2-closed on
/// Omega once H is 2-closed on Omega and G acts on the H-orbits as K, 2-closed.
inline GenholtResult genholt_certify(const PermGroup& group, const PermGroup& h_part, const PermGroup& k_part) {
  require_coprime_direct_product(group, h_part, k_part);
  if (!is_abelian(h_part)) throw precondition_error("H is not abelian");
  GenholtResult out;
  out.abelian_part_closed = two_closure(h_part).order() == h_part.order();
  const auto q = quotient_action(group, h_part);
  if (q.image.order() != k_part.order()) {
    out.detail = "G does not act on the H-orbits as K";
    return out;
  }
  out.quotient_closed = two_closure(q.image).order() == q.image.order();
  out.certified = out.abelian_part_closed && out.quotient_closed;
  if (!out.abelian_part_closed) {
    out.detail = "H is not 2-closed on the points";
  } else if (!out.quotient_closed) {
    out.detail = "K is not 2-closed on the H-orbits";
  } else {
    out.detail = "both parts 2-closed";
  }
  return out;
}

}  // namespace twoclosure
