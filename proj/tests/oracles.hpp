// Independent reference computations used to cross-check the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "expcrit/group.hpp"
#include "expcrit/structure.hpp"

namespace oracle {

using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& x, const Perm& y) {
  Perm r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
  return r;
}

/// Closure of a generator set by naive fixed-point iteration over std::set.
inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t degree) {
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = compose(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

/// Order of x by repeated multiplication.
inline std::uint32_t element_order(const expcrit::FiniteGroup& g, expcrit::ElementId x) {
  std::uint32_t n = 1;
  for (auto y = x; y != expcrit::kIdentity; y = g.mul(y, x)) ++n;
  return n;
}

/// Subgroup generated by a set, by iterating products of members until stable.
inline std::set<expcrit::ElementId> generated(const expcrit::FiniteGroup& g,
                                              const std::vector<expcrit::ElementId>& gens) {
  std::set<expcrit::ElementId> s{expcrit::kIdentity};
  s.insert(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<expcrit::ElementId> cur(s.begin(), s.end());
    for (auto a : cur)
      for (auto b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return s;
}

/// All subgroups of a small group as the distinct subgroups generated by at most
/// three elements. Every group of order < 64 handled in tests needs at most three
/// generators for every subgroup.
inline std::set<std::set<expcrit::ElementId>> subgroups_by_triples(const expcrit::FiniteGroup& g) {
  std::set<std::set<expcrit::ElementId>> out;
  const auto n = static_cast<expcrit::ElementId>(g.order());
  std::set<std::set<expcrit::ElementId>> pairs;
  for (expcrit::ElementId a = 0; a < n; ++a)
    for (expcrit::ElementId b = a; b < n; ++b) pairs.insert(generated(g, {a, b}));
  out = pairs;
  for (const auto& h : pairs)
    for (expcrit::ElementId c = 0; c < n; ++c)
      if (!h.count(c)) {
        std::vector<expcrit::ElementId> gens(h.begin(), h.end());
        gens.push_back(c);
        out.insert(generated(g, gens));
      }
  return out;
}

inline bool is_abelian_set(const expcrit::FiniteGroup& g, const std::vector<expcrit::ElementId>& s) {
  for (auto a : s)
    for (auto b : s)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline std::uint64_t exponent_of_set(const expcrit::FiniteGroup& g, const std::vector<expcrit::ElementId>& s) {
  std::uint64_t e = 1;
  for (auto x : s) e = std::lcm(e, static_cast<std::uint64_t>(oracle::element_order(g, x)));
  return e;
}

/// p-witness existence by scanning every proper subgroup of the lattice.
inline bool has_witness_bruteforce(const expcrit::FiniteGroup& g, std::uint64_t p) {
  const auto pe = expcrit::p_part(expcrit::exponent(g), p);
  for (const auto& h : expcrit::all_subgroups(g).subgroups) {
    if (h.order() == g.order()) continue;
    if (is_abelian_set(g, h.members)) continue;
    if (expcrit::p_part(exponent_of_set(g, h.members), p) == pe) return true;
  }
  return false;
}

}  // namespace oracle
