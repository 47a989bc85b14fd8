// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "numeric.hpp"

namespace expcrit {

/// A subgroup of a parent FiniteGroup, given by its sorted member ids and a
/// (small) generating sequence. The parent is passed alongside explicitly.
struct Subgroup {
  std::vector<ElementId> members;
  std::vector<ElementId> generators;

  std::size_t order() const { return members.size(); }
  bool contains(ElementId x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool is_trivial() const { return members.size() <= 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
};

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members < b.members;
}

namespace detail {

/// Reusable membership marks with O(1) reset.
class Marks {
 public:
  explicit Marks(std::size_t n = 0) : stamp_(n, 0) {}
  void reset(std::size_t n) {
    if (stamp_.size() != n) stamp_.assign(n, 0), epoch_ = 0;
    if (++epoch_ == 0) std::fill(stamp_.begin(), stamp_.end(), 0), epoch_ = 1;
  }
  bool test(ElementId x) const { return stamp_[x] == epoch_; }
  void set(ElementId x) { stamp_[x] = epoch_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_members(std::span<const ElementId> sorted) {
  std::uint64_t h = sorted.size();
  for (auto x : sorted) h = mix64(h ^ x);
  return h;
}

/// Closure of `seed` (already closed or not) under right multiplication by `gens`.
inline std::vector<ElementId> close(const FiniteGroup& g, std::span<const ElementId> seed,
                                    std::span<const ElementId> gens, Marks& marks) {
  marks.reset(g.order());
  std::vector<ElementId> out;
  out.reserve(seed.size() * 2 + 1);
  auto add = [&](ElementId x) {
    if (!marks.test(x)) {
      marks.set(x);
      out.push_back(x);
    }
  };
  add(kIdentity);
  for (auto x : seed) add(x);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto s : gens) add(g.mul(out[i], s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Subgroup closure(const FiniteGroup& g, std::span<const ElementId> gens) {
  detail::Marks marks;
  Subgroup h;
  for (auto x : gens)
    if (x != kIdentity && std::find(h.generators.begin(), h.generators.end(), x) == h.generators.end())
      h.generators.push_back(x);
  h.members = detail::close(g, {}, h.generators, marks);
  return h;
}

inline Subgroup closure(const FiniteGroup& g, std::initializer_list<ElementId> gens) {
  return closure(g, std::span<const ElementId>(gens.begin(), gens.size()));
}

inline Subgroup trivial_subgroup() { return Subgroup{{kIdentity}, {}}; }

inline Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h;
  h.members.resize(g.order());
  std::iota(h.members.begin(), h.members.end(), 0u);
  for (auto x : g.generators())
    if (x != kIdentity && std::find(h.generators.begin(), h.generators.end(), x) == h.generators.end())
      h.generators.push_back(x);
  return h;
}

/// <H, x>
inline Subgroup join(const FiniteGroup& g, const Subgroup& h, ElementId x) {
  if (h.contains(x)) return h;
  detail::Marks marks;
  Subgroup j;
  j.generators = h.generators;
  j.generators.push_back(x);
  j.members = detail::close(g, h.members, j.generators, marks);
  return j;
}

/// <A, B>
inline Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  Subgroup j = a;
  for (auto x : b.generators) j = join(g, j, x);
  return j;
}

/// Subgroup with the given member set; a generating sequence is chosen greedily.
inline Subgroup subgroup_from_members(const FiniteGroup& g, std::vector<ElementId> members) {
  std::sort(members.begin(), members.end());
  Subgroup h = trivial_subgroup();
  // Prefer elements of large order so generating sequences stay short.
  std::vector<ElementId> by_order = members;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](ElementId a, ElementId b) { return g.order_of(a) > g.order_of(b); });
  for (auto x : by_order) {
    if (h.order() == members.size()) break;
    if (!h.contains(x)) h = join(g, h, x);
  }
  if (h.members != members) throw Error(ErrorKind::precondition_violated, "member set is not a subgroup");
  return h;
}

inline bool is_subset(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

inline Subgroup intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<ElementId> m;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(m));
  return subgroup_from_members(g, std::move(m));
}

inline bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i + 1; j < h.generators.size(); ++j)
      if (g.mul(h.generators[i], h.generators[j]) != g.mul(h.generators[j], h.generators[i])) return false;
  return true;
}

inline u64 exponent(const FiniteGroup& g, const Subgroup& h) {
  u64 e = 1;
  for (auto x : h.members) e = std::lcm(e, static_cast<u64>(g.order_of(x)));
  return e;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (auto s : g.generators())
    for (auto x : h.generators)
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

/// Smallest normal subgroup containing `gens`.
inline Subgroup normal_closure(const FiniteGroup& g, std::span<const ElementId> gens) {
  Subgroup h = closure(g, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < h.generators.size() && !grew; ++i)
      for (auto s : g.generators()) {
        ElementId c = g.conj(h.generators[i], s);
        if (!h.contains(c)) {
          h = join(g, h, c);
          grew = true;
          break;
        }
      }
  }
  return h;
}

/// G' as the normal closure of the commutators of the generators.
inline Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<ElementId> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      ElementId c = commutator(g, gens[i], gens[j]);
      if (c != kIdentity) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

/// Derived subgroup of a subgroup H (as a subgroup of the parent).
inline Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<ElementId> comms;
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i + 1; j < h.generators.size(); ++j) {
      ElementId c = commutator(g, h.generators[i], h.generators[j]);
      if (c != kIdentity) comms.push_back(c);
    }
  Subgroup d = closure(g, comms);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < d.generators.size() && !grew; ++i)
      for (auto s : h.generators) {
        ElementId c = g.conj(d.generators[i], s);
        if (!d.contains(c)) {
          d = join(g, d, c);
          grew = true;
          break;
        }
      }
  }
  return d;
}

inline Subgroup centralizer(const FiniteGroup& g, const Subgroup& s) {
  std::vector<ElementId> m;
  for (ElementId x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : s.generators)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) m.push_back(x);
  }
  return subgroup_from_members(g, std::move(m));
}

inline Subgroup center(const FiniteGroup& g) { return centralizer(g, whole_group(g)); }

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& s) {
  std::vector<ElementId> m;
  for (ElementId x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : s.generators)
      if (!s.contains(g.conj(y, x))) {
        ok = false;
        break;
      }
    if (ok) m.push_back(x);
  }
  return subgroup_from_members(g, std::move(m));
}

/// <x^p : x in G>
inline Subgroup power_subgroup(const FiniteGroup& g, u64 p) {
  Subgroup h = trivial_subgroup();
  for (ElementId x = 0; x < g.order(); ++x) {
    ElementId y = g.pow(x, static_cast<i64>(p));
    if (!h.contains(y)) h = join(g, h, y);
  }
  return h;
}

/// Sizes of G, G', G'', ... down to the first repeated term.
inline std::vector<std::size_t> derived_series_orders(const FiniteGroup& g) {
  std::vector<std::size_t> out{g.order()};
  Subgroup cur = whole_group(g);
  while (true) {
    Subgroup next = derived_subgroup(g, cur);
    if (next.order() == cur.order()) break;
    out.push_back(next.order());
    cur = std::move(next);
  }
  return out;
}

inline bool is_solvable(const FiniteGroup& g) { return derived_series_orders(g).back() == 1; }

/// Number of steps to reach the trivial group along the derived series
/// (0 for the trivial group); only meaningful for solvable groups.
inline std::size_t derived_length(const FiniteGroup& g) { return derived_series_orders(g).size() - 1; }

/// The prime p when |G| = p^k (k >= 1), otherwise nullopt.
inline std::optional<u64> pgroup_prime(const FiniteGroup& g) {
  u64 p = prime_of_power(g.order());
  if (p == 0) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------------------
// Frattini quotient of a p-group

/// Coordinates of G/Phi(G) for a p-group, Phi(G) = G'G^p.
struct FrattiniQuotient {
  u64 p = 0;
  Subgroup frattini;
  std::vector<ElementId> basis;        // preimages of a basis of G/Phi(G)
  std::vector<std::uint32_t> labels;   // order * rank coordinates

  std::size_t rank() const { return basis.size(); }
  std::span<const std::uint32_t> label(ElementId x) const {
    return {labels.data() + static_cast<std::size_t>(x) * rank(), rank()};
  }
  /// Element basis_0^{c_0} ... basis_{d-1}^{c_{d-1}}.
  ElementId representative(const FiniteGroup& g, std::span<const std::uint32_t> coords) const {
    ElementId x = kIdentity;
    for (std::size_t i = 0; i < coords.size(); ++i) x = g.mul(x, g.pow(basis[i], coords[i]));
    return x;
  }
};

inline Subgroup frattini_pgroup(const FiniteGroup& g, u64 p) {
  return join(g, derived_subgroup(g), power_subgroup(g, p));
}

inline FrattiniQuotient frattini_quotient(const FiniteGroup& g) {
  auto p = pgroup_prime(g);
  if (!p) throw Error(ErrorKind::not_a_prime_power, "Frattini quotient needs a p-group");
  FrattiniQuotient fq;
  fq.p = *p;
  fq.frattini = frattini_pgroup(g, *p);
  Subgroup h = fq.frattini;
  for (auto x : g.generators()) {
    if (h.contains(x)) continue;
    fq.basis.push_back(x);
    h = join(g, h, x);
  }
  const std::size_t d = fq.basis.size();
  if (ipow(*p, static_cast<unsigned>(d)) * fq.frattini.order() != g.order())
    throw Error(ErrorKind::precondition_violated, "G/Phi(G) is not elementary abelian of the expected rank");
  fq.labels.assign(g.order() * d, 0);
  std::vector<std::uint32_t> c(d, 0);
  std::size_t count = ipow(*p, static_cast<unsigned>(d));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t t = idx;
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = static_cast<std::uint32_t>(t % *p);
      t /= *p;
    }
    ElementId r = fq.representative(g, c);
    for (auto f : fq.frattini.members) {
      ElementId y = g.mul(r, f);
      std::copy(c.begin(), c.end(), fq.labels.begin() + static_cast<long>(y * d));
    }
  }
  return fq;
}

/// Maximal subgroups of a p-group: preimages of the hyperplanes of G/Phi(G).
inline std::vector<Subgroup> maximal_subgroups_pgroup(const FiniteGroup& g) {
  if (g.order() == 1) return {};
  auto fq = frattini_quotient(g);
  const std::size_t d = fq.rank();
  const u64 p = fq.p;
  std::vector<Subgroup> out;
  std::vector<std::uint32_t> lambda(d, 0);
  std::size_t count = ipow(p, static_cast<unsigned>(d));
  for (std::size_t idx = 1; idx < count; ++idx) {
    std::size_t t = idx;
    for (std::size_t i = 0; i < d; ++i) {
      lambda[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    std::size_t lead = 0;
    while (lambda[lead] == 0) ++lead;
    if (lambda[lead] != 1) continue;  // one functional per hyperplane
    Subgroup m;
    for (ElementId x = 0; x < g.order(); ++x) {
      auto l = fq.label(x);
      u64 s = 0;
      for (std::size_t i = 0; i < d; ++i) s += static_cast<u64>(lambda[i]) * l[i];
      if (s % p == 0) m.members.push_back(x);
    }
    m.generators = fq.frattini.generators;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == lead) continue;
      std::vector<std::uint32_t> v(d, 0);
      v[j] = 1;
      v[lead] = static_cast<std::uint32_t>((p - lambda[j]) % p);
      ElementId r = fq.representative(g, v);
      if (r != kIdentity) m.generators.push_back(r);
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup lattices

struct SubgroupLattice {
  std::vector<Subgroup> subgroups;   // sorted by order, then members
  std::vector<char> maximal;         // maximal among proper members of the enumeration

  bool contains(std::size_t inner, std::size_t outer) const {
    return is_subset(subgroups[inner], subgroups[outer]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> containment() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      for (std::size_t j = 0; j < subgroups.size(); ++j)
        if (i != j && subgroups[i].order() < subgroups[j].order() &&
            subgroups[j].order() % subgroups[i].order() == 0 && contains(i, j))
          out.emplace_back(i, j);
    return out;
  }
};

/// Every subgroup generated by `seed` together with elements of `candidates`.
///
/// Seeds the search with <seed, x> for each candidate x and closes under joins
/// with those cyclic extensions until nothing new appears. With a trivial seed and
/// all elements as candidates this is the full subgroup lattice.
inline SubgroupLattice enumerate_subgroups(const FiniteGroup& g, const Subgroup& seed,
                                           std::span<const ElementId> candidates) {
  const auto& lim = limits();
  detail::Marks marks;
  std::vector<Subgroup> subs;
  std::vector<char> has_proper_overgroup;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;

  std::size_t top_order = 0;
  auto insert = [&](Subgroup&& h) -> std::pair<std::size_t, bool> {
    auto hash = detail::hash_members(h.members);
    auto& bucket = index[hash];
    for (auto i : bucket)
      if (subs[i].members == h.members) return {i, false};
    if (subs.size() >= lim.max_subgroups)
      throw Error(ErrorKind::cap_exceeded, "more than " + std::to_string(lim.max_subgroups) + " subgroups");
    bucket.push_back(subs.size());
    top_order = std::max(top_order, h.order());
    subs.push_back(std::move(h));
    has_proper_overgroup.push_back(0);
    return {subs.size() - 1, true};
  };

  insert(Subgroup(seed));
  std::vector<ElementId> reps;
  for (auto x : candidates) {
    if (seed.contains(x)) continue;
    auto [i, fresh] = insert(join(g, seed, x));
    if (fresh) reps.push_back(x);
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    marks.reset(g.order());
    for (auto x : subs[i].members) marks.set(x);
    std::vector<ElementId> outside;
    for (auto r : reps)
      if (!marks.test(r)) outside.push_back(r);
    for (auto r : outside) {
      Subgroup j;
      j.generators = subs[i].generators;
      j.generators.push_back(r);
      detail::Marks m2;
      j.members = detail::close(g, subs[i].members, j.generators, m2);
      auto [k, fresh] = insert(std::move(j));
      (void)fresh;
      if (subs[k].order() < g.order()) has_proper_overgroup[i] = 1;
    }
  }

  // The largest member is the join of everything; "maximal" is relative to it.
  std::vector<std::size_t> order(subs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return subgroup_less(subs[a], subs[b]); });
  SubgroupLattice lat;
  for (auto i : order) {
    bool is_top = subs[i].order() == top_order;
    lat.maximal.push_back(!is_top && !has_proper_overgroup[i]);
    lat.subgroups.push_back(std::move(subs[i]));
  }
  // has_proper_overgroup compares against |G|; recompute relative to the top member.
  if (top_order != g.order()) {
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
      if (lat.subgroups[i].order() == top_order) {
        lat.maximal[i] = 0;
        continue;
      }
      bool maximal = true;
      for (std::size_t j = 0; j < lat.subgroups.size() && maximal; ++j)
        if (lat.subgroups[j].order() > lat.subgroups[i].order() && lat.subgroups[j].order() < top_order &&
            lat.contains(i, j))
          maximal = false;
      lat.maximal[i] = maximal;
    }
  }
  return lat;
}

/// The complete subgroup lattice.
inline SubgroupLattice all_subgroups(const FiniteGroup& g) {
  if (g.order() > limits().lattice_order)
    throw Error(ErrorKind::cap_exceeded, "lattice cap is " + std::to_string(limits().lattice_order) + " elements");
  std::vector<ElementId> all(g.order());
  std::iota(all.begin(), all.end(), 0u);
  auto lat = enumerate_subgroups(g, trivial_subgroup(), all);
  if (g.order() == 1) lat.maximal.assign(1, 0);
  return lat;
}

inline std::vector<Subgroup> maximal_subgroups_from_lattice(const SubgroupLattice& lat) {
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
    if (lat.maximal[i]) out.push_back(lat.subgroups[i]);
  return out;
}

/// Maximal subgroups, sorted by order then member ids. p-groups use the Frattini
/// hyperplane construction; other groups are filtered from the full lattice.
inline std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g) {
  if (g.order() == 1) return {};
  if (pgroup_prime(g)) return maximal_subgroups_pgroup(g);
  return maximal_subgroups_from_lattice(all_subgroups(g));
}

/// Intersection of all maximal subgroups.
inline Subgroup frattini(const FiniteGroup& g) {
  auto maxes = maximal_subgroups(g);
  if (maxes.empty()) return whole_group(g);
  std::vector<ElementId> m = maxes.front().members;
  for (std::size_t i = 1; i < maxes.size(); ++i) {
    std::vector<ElementId> t;
    std::set_intersection(m.begin(), m.end(), maxes[i].members.begin(), maxes[i].members.end(),
                          std::back_inserter(t));
    m = std::move(t);
  }
  return subgroup_from_members(g, std::move(m));
}

// ---------------------------------------------------------------------------
// Sylow and Hall subgroups

/// A Sylow p-subgroup, grown from the trivial group by adjoining p-elements that
/// normalize the current p-subgroup.
inline Subgroup sylow_subgroup(const FiniteGroup& g, u64 p) {
  if (!is_prime(p) || g.order() % p != 0)
    throw Error(ErrorKind::not_a_divisor, std::to_string(p) + " does not divide " + std::to_string(g.order()));
  const u64 target = p_part(g.order(), p);
  if (target == g.order()) return whole_group(g);
  auto is_p_element = [&](ElementId x) { return p_part(g.order_of(x), p) == g.order_of(x); };
  Subgroup sub = trivial_subgroup();
  while (sub.order() < target) {
    Subgroup n = normalizer(g, sub);
    std::optional<ElementId> pick;
    for (auto x : n.members)
      if (!sub.contains(x) && is_p_element(x)) {
        pick = x;
        break;
      }
    if (!pick) {
      // Not reachable for finite groups; fall back to a lattice scan.
      for (const auto& h : all_subgroups(g).subgroups)
        if (h.order() == target) return h;
      throw Error(ErrorKind::search_exhausted, "Sylow ascent stalled");
    }
    sub = join(g, sub, *pick);
  }
  return sub;
}

/// A subgroup whose order is the product of the given prime parts of |G|, if one
/// appears in the lattice.
inline std::optional<Subgroup> hall_subgroup(const FiniteGroup& g, std::span<const u64> primes) {
  u64 target = 1;
  for (auto p : primes)
    if (g.order() % p == 0) target *= p_part(g.order(), p);
  if (target == g.order()) return whole_group(g);
  if (target == 1) return trivial_subgroup();
  std::size_t dividing = 0;
  for (auto p : primes) dividing += g.order() % p == 0;
  if (dividing == 1)
    for (auto p : primes)
      if (g.order() % p == 0) return sylow_subgroup(g, p);
  for (auto& h : all_subgroups(g).subgroups)
    if (h.order() == target) return h;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quotients and subgroup realizations

struct Quotient {
  FiniteGroup group;
  std::vector<std::uint32_t> coset_of;        // parent element -> coset index
  std::vector<ElementId> coset_representative;
  GroupHom projection;                        // parent -> quotient
};

/// G/N as the permutation action on right cosets Nx. Quotient generator i is the
/// image of parent generator i.
inline Quotient quotient_with_projection(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw Error(ErrorKind::not_normal, "subgroup is not normal");
  Quotient q;
  constexpr std::uint32_t kUnset = 0xffffffffu;
  q.coset_of.assign(g.order(), kUnset);
  for (ElementId x = 0; x < g.order(); ++x) {
    if (q.coset_of[x] != kUnset) continue;
    auto c = static_cast<std::uint32_t>(q.coset_representative.size());
    q.coset_representative.push_back(x);
    for (auto y : n.members) q.coset_of[g.mul(y, x)] = c;
  }
  const std::size_t index = q.coset_representative.size();
  if (index * index > limits().max_code_words)
    throw Error(ErrorKind::cap_exceeded, "quotient permutation table exceeds the memory cap");
  std::vector<Permutation> gens;
  for (auto s : g.generators()) {
    std::vector<std::uint32_t> img(index);
    for (std::size_t c = 0; c < index; ++c) img[c] = q.coset_of[g.mul(q.coset_representative[c], s)];
    gens.emplace_back(std::move(img));
  }
  q.group = materialize(std::span<const Permutation>(gens), index);
  if (q.group.order() * n.order() != g.order())
    throw Error(ErrorKind::order_mismatch, "quotient order does not match the index");
  q.projection = hom_from_images(g, q.group, q.group.generators());
  return q;
}

inline FiniteGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  return quotient_with_projection(g, n).group;
}

/// A subgroup materialized as a group in its own right (generators in order).
inline FiniteGroup as_group(const FiniteGroup& g, const Subgroup& h) {
  if (g.is_permutation_group()) {
    std::vector<Permutation> gens;
    for (auto x : h.generators) gens.push_back(g.permutation(x));
    return materialize(std::span<const Permutation>(gens), g.degree());
  }
  std::vector<std::uint32_t> pos(g.order(), 0);
  for (std::uint32_t i = 0; i < h.members.size(); ++i) pos[h.members[i]] = i;
  auto members = h.members;
  auto mul = [&g, members, pos](std::uint32_t a, std::uint32_t b) { return pos[g.mul(members[a], members[b])]; };
  auto inv = [&g, members, pos](std::uint32_t a) { return pos[g.inv(members[a])]; };
  std::vector<std::uint32_t> gens;
  for (auto x : h.generators) gens.push_back(pos[x]);
  return indexed_group(mul, inv, gens);
}

// ---------------------------------------------------------------------------
// Isomorphism testing

struct Fingerprint {
  std::size_t order = 0;
  u64 exponent = 0;
  std::size_t center_order = 0;
  std::vector<std::size_t> derived_series;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order_centralizer;  // sorted multiset

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

namespace detail {

inline std::vector<std::uint32_t> centralizer_sizes(const FiniteGroup& g) {
  std::vector<std::uint32_t> out(g.order(), 0);
  for (ElementId x = 0; x < g.order(); ++x) {
    std::uint32_t c = 0;
    for (ElementId y = 0; y < g.order(); ++y) c += g.mul(x, y) == g.mul(y, x);
    out[x] = c;
  }
  return out;
}

}  // namespace detail

inline Fingerprint fingerprint(const FiniteGroup& g) {
  Fingerprint f;
  f.order = g.order();
  f.exponent = exponent(g);
  f.center_order = center(g).order();
  f.derived_series = derived_series_orders(g);
  const bool deep = g.order() <= 4096;
  std::vector<std::uint32_t> cs = deep ? detail::centralizer_sizes(g) : std::vector<std::uint32_t>(g.order(), 0);
  for (ElementId x = 0; x < g.order(); ++x) f.order_centralizer.emplace_back(g.order_of(x), cs[x]);
  std::sort(f.order_centralizer.begin(), f.order_centralizer.end());
  return f;
}

/// A short generating sequence: repeatedly adjoin the element that enlarges the
/// generated subgroup most (ties to larger element order, then smaller id).
inline std::vector<ElementId> small_generating_sequence(const FiniteGroup& g) {
  std::vector<ElementId> gens;
  Subgroup h = trivial_subgroup();
  while (h.order() < g.order()) {
    ElementId best = 0;
    std::size_t best_size = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (h.contains(x)) continue;
      std::size_t sz = join(g, h, x).order();
      if (sz > best_size || (sz == best_size && g.order_of(x) > g.order_of(best))) {
        best = x;
        best_size = sz;
      }
      if (sz == g.order()) break;
    }
    gens.push_back(best);
    h = join(g, h, best);
  }
  return gens;
}

/// Calls `visit(map)` for each isomorphism G -> H (map[x] = image of x) until it
/// returns true. Returns whether some call returned true.
inline bool for_each_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                 const std::function<bool(const std::vector<ElementId>&)>& visit) {
  if (g.order() != h.order()) return false;
  if (g.order() == 1) return visit(std::vector<ElementId>{kIdentity});
  const auto gens = small_generating_sequence(g);
  const auto csg = detail::centralizer_sizes(g);
  const auto csh = detail::centralizer_sizes(h);
  std::vector<std::vector<ElementId>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (ElementId y = 0; y < h.order(); ++y)
      if (h.order_of(y) == g.order_of(gens[i]) && csh[y] == csg[gens[i]]) candidates[i].push_back(y);

  constexpr ElementId kUnset = 0xffffffffu;
  std::vector<ElementId> images(gens.size());
  std::vector<ElementId> f(g.order());
  detail::Marks used;

  // Extends the map over <gens[0..depth]>; false on inconsistency or collision.
  auto extend = [&](std::size_t depth) {
    std::fill(f.begin(), f.end(), kUnset);
    used.reset(h.order());
    std::vector<ElementId> queue{kIdentity};
    f[kIdentity] = kIdentity;
    used.set(kIdentity);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      ElementId u = queue[q];
      for (std::size_t j = 0; j <= depth; ++j) {
        ElementId v = g.mul(u, gens[j]);
        ElementId w = h.mul(f[u], images[j]);
        if (f[v] == kUnset) {
          if (used.test(w)) return false;
          used.set(w);
          f[v] = w;
          queue.push_back(v);
        } else if (f[v] != w) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    for (auto y : candidates[depth]) {
      images[depth] = y;
      if (!extend(depth)) continue;
      if (depth + 1 == gens.size()) {
        if (visit(f)) return true;
      } else if (search(depth + 1)) {
        return true;
      }
    }
    return false;
  };
  return search(0);
}

/// Isomorphism test: invariant fingerprint first, then bounded backtracking over
/// images of a short generating sequence.
inline bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return false;
  if (!(fingerprint(g) == fingerprint(h))) return false;
  if (g.order() > limits().isomorphism_order)
    throw Error(ErrorKind::cap_exceeded, "isomorphism search cap is " + std::to_string(limits().isomorphism_order));
  return for_each_isomorphism(g, h, [](const std::vector<ElementId>&) { return true; });
}

// ---------------------------------------------------------------------------
// Structural predicates

/// Elementary abelian, or Q' = Z(Q) = Phi(Q) with Q' elementary abelian.
inline bool is_special(const FiniteGroup& q) {
  auto p = pgroup_prime(q);
  if (!p) {
    if (q.order() == 1) return true;
    throw Error(ErrorKind::not_a_prime_power, "is_special needs a prime-power group");
  }
  if (q.is_abelian()) return exponent(q) == *p;
  Subgroup d = derived_subgroup(q);
  Subgroup z = center(q);
  Subgroup f = frattini_pgroup(q, *p);
  if (!(d == z) || !(d == f)) return false;
  return is_abelian(q, d) && exponent(q, d) == *p;
}

/// Non-abelian with every proper subgroup abelian (equivalently, every maximal
/// subgroup abelian).
inline bool is_minimal_nonabelian(const FiniteGroup& g) {
  if (g.is_abelian()) return false;
  for (const auto& m : maximal_subgroups(g))
    if (!is_abelian(g, m)) return false;
  return true;
}

}  // namespace expcrit
