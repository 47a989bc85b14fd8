// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "numeric.hpp"
#include "structure.hpp"

namespace expcrit {

/// Evidence for one prime p dividing |G|.
struct WitnessReport {
  u64 prime = 0;
  u64 group_exponent_p_part = 1;
  std::optional<Subgroup> witness;
  std::optional<u64> witness_exponent;

  bool found() const { return witness.has_value(); }
};

enum class PGroupType { abelian, typeA, typeB, not_critical, not_a_p_group };

constexpr std::string_view to_string(PGroupType t) {
  switch (t) {
    case PGroupType::abelian: return "abelian";
    case PGroupType::typeA: return "typeA";
    case PGroupType::typeB: return "typeB";
    case PGroupType::not_critical: return "not-critical";
    case PGroupType::not_a_p_group: return "not-a-p-group";
  }
  return "unknown";
}

struct AnalysisReport {
  std::size_t order = 0;
  std::vector<std::pair<u64, int>> factorization;
  u64 exponent = 1;
  std::vector<WitnessReport> witnesses;  // one per prime divisor, ascending
  bool exponent_critical = false;
  PGroupType type = PGroupType::not_a_p_group;
  std::size_t maximal_count = 0;
  std::size_t abelian_maximal_count = 0;
};

/// Is H a p-witness for G (H proper, non-abelian, same p-part of the exponent)?
inline bool is_p_witness(const FiniteGroup& g, const Subgroup& h, u64 p, u64 group_exponent) {
  if (h.order() >= g.order() || is_abelian(g, h)) return false;
  return p_part(exponent(g, h), p) == p_part(group_exponent, p);
}

/// First maximal subgroup (in the sorted order of `maximals`) that is a p-witness.
inline WitnessReport find_p_witness(const FiniteGroup& g, u64 p, const std::vector<Subgroup>& maximals) {
  if (!is_prime(p) || g.order() % p != 0)
    throw Error(ErrorKind::not_a_divisor, std::to_string(p) + " does not divide " + std::to_string(g.order()));
  WitnessReport r;
  r.prime = p;
  const u64 e = exponent(g);
  r.group_exponent_p_part = p_part(e, p);
  for (const auto& m : maximals)
    if (is_p_witness(g, m, p, e)) {
      r.witness = m;
      r.witness_exponent = exponent(g, m);
      break;
    }
  return r;
}

namespace detail {

inline void require_decidable(const FiniteGroup& g) {
  if (g.order() > 1 && !pgroup_prime(g) && g.order() > limits().lattice_order)
    throw Error(ErrorKind::undecided, "order " + std::to_string(g.order()) +
                                          " exceeds the lattice cap and the group is not a p-group");
}

}  // namespace detail

inline WitnessReport find_p_witness(const FiniteGroup& g, u64 p) {
  detail::require_decidable(g);
  return find_p_witness(g, p, maximal_subgroups(g));
}

/// Full analysis from a precomputed list of maximal subgroups.
inline AnalysisReport analyze(const FiniteGroup& g, const std::vector<Subgroup>& maximals) {
  AnalysisReport rep;
  rep.order = g.order();
  rep.factorization = factorize(g.order());
  rep.exponent = exponent(g);
  rep.maximal_count = maximals.size();
  for (const auto& m : maximals) rep.abelian_maximal_count += is_abelian(g, m);
  for (auto [p, k] : rep.factorization) {
    rep.witnesses.push_back(find_p_witness(g, p, maximals));
    if (!rep.witnesses.back().found()) rep.exponent_critical = true;
  }
  if (!pgroup_prime(g)) {
    rep.type = PGroupType::not_a_p_group;
  } else if (g.is_abelian()) {
    rep.type = PGroupType::abelian;
  } else if (!rep.exponent_critical) {
    rep.type = PGroupType::not_critical;
  } else if (rep.abelian_maximal_count == 1) {
    rep.type = PGroupType::typeA;
  } else if (rep.abelian_maximal_count >= 2) {
    rep.type = PGroupType::typeB;
  } else {
    throw Error(ErrorKind::precondition_violated, "exponent-critical p-group without an abelian maximal subgroup");
  }
  return rep;
}

/// Exponent-criticality and per-prime witness evidence. Non-p-groups above the
/// lattice cap are reported as undecided rather than guessed.
inline AnalysisReport analyze(const FiniteGroup& g) {
  detail::require_decidable(g);
  return analyze(g, maximal_subgroups(g));
}

inline bool is_exponent_critical(const FiniteGroup& g) { return analyze(g).exponent_critical; }

inline PGroupType classify_pgroup(const FiniteGroup& p) {
  if (!pgroup_prime(p)) throw Error(ErrorKind::not_a_prime_power, "order " + std::to_string(p.order()));
  return analyze(p).type;
}

/// Minimal number of generators of a p-group, i.e. the rank of G/Phi(G).
inline std::size_t generator_rank(const FiniteGroup& p) {
  if (p.order() == 1) return 0;
  return frattini_quotient(p).rank();
}

/// A generating pair (x, y) of a p-group with o(x) = exp(G), if one exists.
inline std::optional<std::pair<ElementId, ElementId>> max_order_generating_pair(const FiniteGroup& g) {
  if (g.order() == 1 || generator_rank(g) > 2) return std::nullopt;
  const u64 e = exponent(g);
  auto phi = frattini_pgroup(g, *pgroup_prime(g));
  for (ElementId x = 0; x < g.order(); ++x) {
    if (g.order_of(x) != e || phi.contains(x)) continue;
    auto cx = closure(g, {x});
    if (cx.order() == g.order()) return std::pair{x, kIdentity};
    // <x, y> = G iff the images of x and y span G/Phi(G)
    auto phix = join(g, phi, x);
    for (ElementId y = 0; y < g.order(); ++y)
      if (!phix.contains(y) && join(g, phix, y).order() == g.order()) return std::pair{x, y};
  }
  return std::nullopt;
}

}  // namespace expcrit
