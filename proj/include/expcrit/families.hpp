// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coset_enum.hpp"
#include "error.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "structure.hpp"

namespace expcrit {

/// A k x k matrix over Z/p^m whose reduction mod p acts irreducibly, of
/// multiplicative order `action_order`.
struct IrreducibleAction {
  u64 p = 0;
  unsigned m = 1;
  std::size_t k = 0;
  IntMatrix matrix;
  u64 action_order = 1;
};

namespace detail {

inline void require_prime(u64 p, const char* what) {
  if (!is_prime(p)) throw Error(ErrorKind::invalid_parameters, std::string(what) + " must be prime");
}

/// Companion matrix of x^k + c_{k-1} x^{k-1} + ... + c_0 acting on row vectors.
inline IntMatrix companion(const std::vector<i64>& c, i64 modulus) {
  const std::size_t k = c.size();
  IntMatrix m(k, modulus);
  for (std::size_t i = 0; i + 1 < k; ++i) m(i, i + 1) = 1;
  for (std::size_t j = 0; j < k; ++j) m(k - 1, j) = mod(-c[j], modulus);
  return m;
}

/// Images of the generators of abelian_group(moduli) under the matrix rows.
inline std::vector<ElementId> module_images(const FiniteGroup& v, const IntMatrix& m, std::size_t offset = 0) {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<i64> e(offset + m.size(), 0);
    auto r = m.row(i);
    std::copy(r.begin(), r.end(), e.begin() + static_cast<long>(offset));
    out.push_back(word_in_generators(v, e));
  }
  return out;
}

}  // namespace detail

/// Searches monic degree-k polynomials over F_p in lexicographic order of
/// (c_0, ..., c_{k-1}) for an irreducibly acting companion matrix of order
/// `target_order`, then lifts it to Z/p^m by raising an integer lift to the
/// p-part of its order.
inline IrreducibleAction irreducible_cyclic_action(u64 p, unsigned m, std::size_t k, u64 target_order) {
  detail::require_prime(p, "p");
  if (m < 1 || k < 1 || target_order < 1) throw Error(ErrorKind::invalid_parameters, "m, k and the order must be positive");
  if ((ipow(p, static_cast<unsigned>(k)) - 1) % target_order != 0)
    throw Error(ErrorKind::no_such_order, std::to_string(target_order) + " does not divide " + std::to_string(p) + "^" +
                                              std::to_string(k) + " - 1");
  for (std::size_t j = 1; j < k; ++j)
    if ((ipow(p, static_cast<unsigned>(j)) - 1) % target_order == 0)
      throw Error(ErrorKind::no_such_order, std::to_string(target_order) + " divides " + std::to_string(p) + "^" +
                                                std::to_string(j) + " - 1, so no irreducible action exists");
  const auto ip = static_cast<i64>(p);
  const u64 count = ipow(p, static_cast<unsigned>(k));
  std::vector<i64> c(k);
  for (u64 idx = 0; idx < count; ++idx) {
    // lexicographic on (c_0, ..., c_{k-1}): c_0 varies slowest
    u64 t = idx;
    for (std::size_t i = k; i-- > 0;) {
      c[i] = static_cast<i64>(t % p);
      t /= p;
    }
    if (c[0] == 0) continue;  // singular
    IntMatrix m0 = detail::companion(c, ip);
    if (m0.order(count) != target_order) continue;
    if (!acts_irreducibly(m0, ip)) continue;
    const auto pm = static_cast<i64>(ipow(p, m));
    IntMatrix lift = m0.reduced(pm);
    u64 t_lift = lift.order(target_order * ipow(p, m));
    if (t_lift == 0) throw Error(ErrorKind::search_exhausted, "lift order not found");
    IrreducibleAction out{p, m, k, lift.pow(p_part(t_lift, p)), target_order};
    if (out.matrix.order(target_order) != target_order)
      throw Error(ErrorKind::search_exhausted, "lifted matrix has the wrong order");
    return out;
  }
  throw Error(ErrorKind::search_exhausted, "no companion matrix of order " + std::to_string(target_order));
}

/// (Z_p)^k x| Z_{q^b}, the top generator acting by an irreducible matrix of order q.
inline FiniteGroup minimal_nonabelian_pq(u64 p, std::size_t k, u64 q, unsigned b) {
  detail::require_prime(p, "p");
  detail::require_prime(q, "q");
  if (p == q) throw Error(ErrorKind::invalid_parameters, "p and q must differ");
  if (b < 1) throw Error(ErrorKind::invalid_parameters, "b must be positive");
  auto act = irreducible_cyclic_action(p, 1, k, q);
  std::vector<std::size_t> moduli(k, p);
  auto v = abelian_group(moduli);
  auto g = semidirect_product(v, ipow(q, b), detail::module_images(v, act.matrix));
  if (!is_minimal_nonabelian(g)) throw Error(ErrorKind::precondition_violated, "result is not minimal non-abelian");
  return g;
}

/// Z_{p^a} x H for a minimal non-abelian H whose order has exactly two prime
/// divisors, neither equal to p.
inline FiniteGroup family_B(u64 p, unsigned a, const FiniteGroup& mna) {
  detail::require_prime(p, "p");
  if (a < 1) throw Error(ErrorKind::invalid_parameters, "a must be positive");
  auto primes = prime_divisors(mna.order());
  if (primes.size() != 2)
    throw Error(ErrorKind::precondition_violated, "complement order must have exactly two prime divisors");
  if (mna.order() % p == 0) throw Error(ErrorKind::precondition_violated, "complement order divisible by p");
  if (!is_minimal_nonabelian(mna)) throw Error(ErrorKind::precondition_violated, "complement is not minimal non-abelian");
  return direct_product(cyclic_group(ipow(p, a)), mna);
}

/// Z_{p^a} x Q for a minimal non-abelian q-group Q, q != p.
inline FiniteGroup family_C1(u64 p, unsigned a, const FiniteGroup& q_mna) {
  detail::require_prime(p, "p");
  if (a < 1) throw Error(ErrorKind::invalid_parameters, "a must be positive");
  auto q = pgroup_prime(q_mna);
  if (!q) throw Error(ErrorKind::precondition_violated, "complement is not a group of prime-power order");
  if (*q == p) throw Error(ErrorKind::precondition_violated, "complement is a p-group for the same prime");
  if (!is_minimal_nonabelian(q_mna)) throw Error(ErrorKind::precondition_violated, "complement is not minimal non-abelian");
  return direct_product(cyclic_group(ipow(p, a)), q_mna);
}

/// (Z_{p^m})^k x| Z_{q^n}; the top generator acts by an irreducible matrix of
/// order q, so only the order-q quotient of the top group acts.
inline FiniteGroup family_C2(u64 p, unsigned m, std::size_t k, u64 q, unsigned n) {
  detail::require_prime(p, "p");
  detail::require_prime(q, "q");
  if (p == q) throw Error(ErrorKind::invalid_parameters, "p and q must differ");
  if (m < 1 || n < 1) throw Error(ErrorKind::invalid_parameters, "m and n must be positive");
  auto act = irreducible_cyclic_action(p, m, k, q);
  std::vector<std::size_t> moduli(k, ipow(p, m));
  auto v = abelian_group(moduli);
  return semidirect_product(v, ipow(q, n), detail::module_images(v, act.matrix));
}

/// (Z_{p^m} x (Z_p)^k) x| Z_{q^n}, trivial on the cyclic factor and irreducible of
/// order q on the elementary abelian factor. Requires m > 1.
inline FiniteGroup family_C3(u64 p, unsigned m, std::size_t k, u64 q, unsigned n) {
  detail::require_prime(p, "p");
  detail::require_prime(q, "q");
  if (m <= 1) throw Error(ErrorKind::m_too_small, "m must exceed 1");
  if (p == q) throw Error(ErrorKind::invalid_parameters, "p and q must differ");
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be positive");
  auto act = irreducible_cyclic_action(p, 1, k, q);
  std::vector<std::size_t> moduli{ipow(p, m)};
  moduli.insert(moduli.end(), k, p);
  auto v = abelian_group(moduli);
  std::vector<ElementId> images{v.generator(0)};
  auto rest = detail::module_images(v, act.matrix, 1);
  images.insert(images.end(), rest.begin(), rest.end());
  return semidirect_product(v, ipow(q, n), images);
}

enum class ExtraspecialSign { plus, minus };

/// Extraspecial group of order q^{1+2n}. For odd q, plus has exponent q and
/// minus exponent q^2. For q = 2 only n = 1 is supported: plus is D8, minus is Q8.
inline FiniteGroup extraspecial(u64 q, unsigned n, ExtraspecialSign sign) {
  detail::require_prime(q, "q");
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be positive");
  if (q == 2) {
    if (n != 1) throw Error(ErrorKind::invalid_parameters, "q = 2 supports n = 1 only");
    return sign == ExtraspecialSign::plus ? dihedral_group(8) : dicyclic_group(8);
  }
  if (ipow(q, 1 + 2 * n) > limits().max_elements) throw Error(ErrorKind::cap_exceeded, "extraspecial group too large");
  auto heisenberg = [q] {
    std::size_t moduli[] = {q, q};
    auto v = abelian_group(moduli);
    // x -> x z, z -> z
    ElementId images[] = {v.mul(v.generator(0), v.generator(1)), v.generator(1)};
    return semidirect_product(v, q, images);
  };
  auto metacyclic = [q] {
    auto c = cyclic_group(q * q);
    ElementId images[] = {c.pow(c.generator(0), static_cast<i64>(1 + q))};
    return semidirect_product(c, q, images);
  };
  FiniteGroup factor0 = sign == ExtraspecialSign::plus ? heisenberg() : metacyclic();
  if (n == 1) return factor0;
  // Central product: identify the centres of n factors.
  FiniteGroup h = heisenberg();
  FiniteGroup prod = factor0;
  std::vector<ElementId> centres{center(factor0).generators.front()};
  for (unsigned i = 1; i < n; ++i) {
    auto e = direct_product_embedded(prod, h);
    for (auto& z : centres) z = e.left[z];
    centres.push_back(e.right[center(h).generators.front()]);
    prod = std::move(e.group);
  }
  std::vector<ElementId> ident;
  for (std::size_t i = 1; i < centres.size(); ++i) ident.push_back(prod.mul(centres[0], prod.inv(centres[i])));
  return quotient(prod, closure(prod, ident));
}

struct C4Shape {
  enum class Kind { elementary, extraspecial } kind = Kind::elementary;
  std::size_t k = 1;                                  // elementary rank
  unsigned n = 1;                                     // extraspecial: order q^{1+2n}
  ExtraspecialSign sign = ExtraspecialSign::plus;
};

struct C4Result {
  FiniteGroup group;
  u64 action_order = 1;
};

/// Q x| Z_{p^a} for a special q-group Q with the generator of Z_{p^a} acting
/// trivially on Q' and irreducibly on Q/Q'. The action order is the largest p^c
/// (c <= a) that admits such an action.
inline C4Result family_C4_detail(u64 q, const C4Shape& shape, u64 p, unsigned a) {
  detail::require_prime(q, "q");
  detail::require_prime(p, "p");
  if (p == q) throw Error(ErrorKind::invalid_parameters, "p and q must differ");
  if (a < 1) throw Error(ErrorKind::invalid_parameters, "a must be positive");
  const u64 top = ipow(p, a);
  if (shape.kind == C4Shape::Kind::elementary) {
    for (unsigned c = a; c >= 1; --c) {
      u64 ord = ipow(p, c);
      try {
        auto act = irreducible_cyclic_action(q, 1, shape.k, ord);
        std::vector<std::size_t> moduli(shape.k, q);
        auto v = abelian_group(moduli);
        return {semidirect_product(v, top, detail::module_images(v, act.matrix)), ord};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::no_such_order) throw;
      }
    }
    throw Error(ErrorKind::no_such_action, "no irreducible action of a non-trivial " + std::to_string(p) +
                                               "-element on (Z_" + std::to_string(q) + ")^" + std::to_string(shape.k));
  }
  auto qg = extraspecial(q, shape.n, shape.sign);
  if (qg.order() > limits().isomorphism_order)
    throw Error(ErrorKind::cap_exceeded, "automorphism search needs |Q| <= " + std::to_string(limits().isomorphism_order));
  auto z = center(qg);
  auto fq = frattini_quotient(qg);
  std::vector<ElementId> best;
  u64 best_order = 1;
  for_each_isomorphism(qg, qg, [&](const std::vector<ElementId>& alpha) {
    for (auto x : z.members)
      if (alpha[x] != x) return false;
    // order of alpha on the generators
    u64 ord = 1;
    std::vector<ElementId> cur(qg.generators());
    for (auto& x : cur) x = alpha[x];
    while (cur != qg.generators()) {
      for (auto& x : cur) x = alpha[x];
      ++ord;
    }
    if (ord <= best_order || top % ord != 0) return false;
    IntMatrix mq(fq.rank(), static_cast<i64>(q));
    for (std::size_t i = 0; i < fq.rank(); ++i) {
      auto l = fq.label(alpha[fq.basis[i]]);
      for (std::size_t j = 0; j < fq.rank(); ++j) mq(i, j) = l[j];
    }
    if (!acts_irreducibly(mq, static_cast<i64>(q))) return false;
    best_order = ord;
    best.clear();
    for (auto x : qg.generators()) best.push_back(alpha[x]);
    return best_order == top;
  });
  if (best.empty())
    throw Error(ErrorKind::no_such_action, "no automorphism of p-power order fixes the centre and acts irreducibly");
  return {semidirect_product(qg, top, best), best_order};
}

inline FiniteGroup family_C4(u64 q, const C4Shape& shape, u64 p, unsigned a) {
  return family_C4_detail(q, shape, p, a).group;
}

// ---------------------------------------------------------------------------
// Type-B p-groups

struct TypeBParams {
  u64 p = 2;
  unsigned alpha = 1, beta = 1, rho = 0, sigma = 0;
  friend bool operator==(const TypeBParams&, const TypeBParams&) = default;
};

/// Whether the tuple appears in the classification list for type-B groups.
inline bool typeB_listed(const TypeBParams& t) {
  if (!is_prime(t.p) || t.beta < 1 || t.alpha < t.beta || t.rho > 1 || t.sigma > 1) return false;
  const bool rs01 = t.rho == 0 && t.sigma == 1, rs11 = t.rho == 1 && t.sigma == 1, rs10 = t.rho == 1 && t.sigma == 0;
  if (t.alpha > t.beta) return rs01 || rs11 || rs10;
  const unsigned min_alpha = t.p == 2 ? 2 : 1;
  if (t.alpha >= min_alpha && (rs01 || rs11)) return true;
  if (t.p == 2 && t.alpha == 1) return (t.rho == 0 && t.sigma == 0) || rs11;
  return false;
}

/// Every listed tuple for p with alpha + beta <= max_sum, in lexicographic order.
inline std::vector<TypeBParams> typeB_parameter_list(u64 p, unsigned max_sum) {
  std::vector<TypeBParams> out;
  for (unsigned alpha = 1; alpha < max_sum; ++alpha)
    for (unsigned beta = 1; beta <= alpha && alpha + beta <= max_sum; ++beta)
      for (unsigned rho = 0; rho <= 1; ++rho)
        for (unsigned sigma = 0; sigma <= 1; ++sigma) {
          TypeBParams t{p, alpha, beta, rho, sigma};
          if (typeB_listed(t)) out.push_back(t);
        }
  return out;
}

inline Presentation typeB_relators(const TypeBParams& t) {
  Presentation pres;
  pres.generators = {"a", "b"};
  const Word a{1}, b{2};
  const Word c = word_commutator(a, b);
  pres.add_relator(word_power(c, static_cast<i64>(t.p)));
  pres.add_relator(word_commutator(c, a));
  pres.add_relator(word_commutator(c, b));
  pres.add_relator(word_concat(word_power(a, static_cast<i64>(ipow(t.p, t.alpha))),
                               word_power(c, -static_cast<i64>(ipow(t.p, t.rho)))));
  pres.add_relator(word_concat(word_power(b, static_cast<i64>(ipow(t.p, t.beta))),
                               word_power(c, -static_cast<i64>(ipow(t.p, t.sigma)))));
  return pres;
}

/// The presented type-B group, realized by coset enumeration; order p^{alpha+beta+1}.
inline FiniteGroup typeB_presentation(const TypeBParams& t) {
  if (!typeB_listed(t))
    throw Error(ErrorKind::invalid_parameters, "(" + std::to_string(t.alpha) + "," + std::to_string(t.beta) + "," +
                                                   std::to_string(t.rho) + "," + std::to_string(t.sigma) +
                                                   ") is not in the list for p = " + std::to_string(t.p));
  auto g = presented_group(typeB_relators(t));
  if (g.order() != ipow(t.p, t.alpha + t.beta + 1))
    throw Error(ErrorKind::order_mismatch, "presented group has order " + std::to_string(g.order()));
  return g;
}

}  // namespace expcrit
