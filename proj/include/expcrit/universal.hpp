// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coset_enum.hpp"
#include "error.hpp"
#include "group.hpp"
#include "numeric.hpp"
#include "structure.hpp"

namespace expcrit {

/// Native arithmetic in U = W x| <b0>, W = Z_{p^m} x (Z_{p^{m-1}})^{p-1}.
///
/// An element (e, v) stands for b0^e a_0^{v_0} ... a_{p-1}^{v_{p-1}}, with
/// b0^-1 w b0 = phi(w). Products: (e1, v1)(e2, v2) = (e1 + e2, phi^{e2}(v1) + v2).
class UArith {
 public:
  struct Element {
    i64 e = 0;
    std::vector<i64> v;
    friend bool operator==(const Element&, const Element&) = default;
  };

  UArith(u64 p, unsigned m) : p_(p), m_(m) {
    if (!is_prime(p)) throw Error(ErrorKind::invalid_parameters, "p must be prime");
    if (m < 2) throw Error(ErrorKind::m_too_small, "m must be at least 2");
    pm_ = static_cast<i64>(ipow(p, m));
    pm1_ = static_cast<i64>(ipow(p, m - 1));
    const std::size_t n = p;
    // phi as a matrix on exponent vectors: row i is the image of a_i.
    std::vector<std::vector<i64>> phi(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      phi[i][i] = 1;
      phi[i][i + 1] = 1;
    }
    phi[n - 1][n - 1] += 1;
    for (std::size_t j = 1; j < n; ++j) phi[n - 1][j] -= static_cast<i64>(binomial(p, j));
    phi_powers_.push_back(identity_matrix());
    for (std::size_t k = 1; k <= n; ++k) phi_powers_.push_back(compose(phi_powers_.back(), phi));
    for (auto& row : phi_powers_.back()) normalize(row);
    phi_has_order_p_ = phi_powers_.back() == identity_matrix();
    for (std::size_t k = 1; k < n; ++k) phi_has_order_p_ = phi_has_order_p_ && phi_powers_[k] != identity_matrix();
    phi_powers_.pop_back();
  }

  u64 p() const { return p_; }
  unsigned m() const { return m_; }
  std::size_t order() const { return static_cast<std::size_t>(pm1_ * pm_ * static_cast<i64>(ipow(p_, static_cast<unsigned>((m_ - 1) * (p_ - 1))))); }
  i64 modulus(std::size_t i) const { return i == 0 ? pm_ : pm1_; }
  bool phi_has_order_p() const { return phi_has_order_p_; }
  /// Row i holds the exponent vector of phi(a_i).
  const std::vector<std::vector<i64>>& phi_matrix() const { return phi_powers_[1]; }

  /// phi^k(v) on exponent vectors.
  std::vector<i64> phi(const std::vector<i64>& v, i64 k) const {
    const auto& mat = phi_powers_[static_cast<std::size_t>(mod(k, static_cast<i64>(p_)))];
    std::vector<i64> out(p_, 0);
    for (std::size_t i = 0; i < p_; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < p_; ++j) out[j] += v[i] * mat[i][j];
    }
    normalize(out);
    return out;
  }

  Element mul(const Element& x, const Element& y) const {
    Element r;
    r.e = mod(x.e + y.e, pm1_);
    r.v = phi(x.v, y.e);
    for (std::size_t i = 0; i < p_; ++i) r.v[i] += y.v[i];
    normalize(r.v);
    return r;
  }

  Element inv(const Element& x) const {
    Element r;
    r.e = mod(-x.e, pm1_);
    r.v = phi(x.v, -x.e);
    for (auto& c : r.v) c = -c;
    normalize(r.v);
    return r;
  }

  Element a(std::size_t i) const {
    Element x{0, std::vector<i64>(p_, 0)};
    x.v[i] = 1;
    return x;
  }
  Element b0() const { return Element{1 % pm1_, std::vector<i64>(p_, 0)}; }

  /// Mixed-radix index e + p^{m-1} (v_0 + p^m (v_1 + p^{m-1} (v_2 + ...))).
  std::uint32_t index(const Element& x) const {
    i64 idx = 0;
    for (std::size_t i = p_; i-- > 0;) idx = idx * modulus(i) + x.v[i];
    return static_cast<std::uint32_t>(idx * pm1_ + x.e);
  }
  Element element(std::uint32_t idx) const {
    Element x{static_cast<i64>(idx) % pm1_, std::vector<i64>(p_, 0)};
    i64 t = static_cast<i64>(idx) / pm1_;
    for (std::size_t i = 0; i < p_; ++i) {
      x.v[i] = t % modulus(i);
      t /= modulus(i);
    }
    return x;
  }

 private:
  using Matrix = std::vector<std::vector<i64>>;

  Matrix identity_matrix() const {
    Matrix id(p_, std::vector<i64>(p_, 0));
    for (std::size_t i = 0; i < p_; ++i) id[i][i] = 1;
    return id;
  }
  Matrix compose(const Matrix& x, const Matrix& y) const {
    Matrix r(p_, std::vector<i64>(p_, 0));
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t l = 0; l < p_; ++l)
        for (std::size_t j = 0; j < p_; ++j) r[i][j] += x[i][l] * y[l][j];
    for (auto& row : r) normalize(row);
    return r;
  }
  void normalize(std::vector<i64>& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], modulus(i));
  }

  u64 p_;
  unsigned m_;
  i64 pm_ = 1, pm1_ = 1;
  std::vector<Matrix> phi_powers_;
  bool phi_has_order_p_ = false;
};

/// W = Z_{p^m} x (Z_{p^{m-1}})^{p-1}; generator i is a_i.
inline FiniteGroup build_W(u64 p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorKind::invalid_parameters, "p must be prime");
  if (m < 2) throw Error(ErrorKind::m_too_small, "m must be at least 2");
  std::vector<std::size_t> moduli{ipow(p, m)};
  moduli.insert(moduli.end(), p - 1, ipow(p, m - 1));
  return abelian_group(moduli);
}

/// phi on W as a validated automorphism.
inline GroupHom phi_automorphism(u64 p, unsigned m) {
  auto w = build_W(p, m);
  UArith u(p, m);
  std::vector<ElementId> images;
  for (std::size_t i = 0; i < p; ++i) images.push_back(word_in_generators(w, u.phi(u.a(i).v, 1)));
  GroupHom h;
  try {
    h = hom_from_images(w, w, images);
  } catch (const Error& e) {
    throw Error(ErrorKind::action_not_automorphism, e.what());
  }
  if (!h.injective()) throw Error(ErrorKind::action_not_automorphism, "phi is not bijective");
  return h;
}

/// U with its native group realization (generators a0, b0) and named elements.
struct UContext {
  u64 p = 0;
  unsigned m = 0;
  UArith arith{2, 2};
  FiniteGroup group;                       // generators: a0, b0
  std::optional<FiniteGroup> permutation;  // regular permutation realization, when small
  std::vector<ElementId> a;                // a_0 .. a_{p-1}
  ElementId b0 = kIdentity;

  ElementId id_of(const UArith::Element& x) const { return *group.find(std::vector<std::uint32_t>{arith.index(x)}); }
  UArith::Element element_of(ElementId x) const { return arith.element(group.code(x)[0]); }
};

/// Builds U natively; a regular permutation realization is added when |U| is at
/// most `permutation_limit`.
inline UContext build_U(u64 p, unsigned m, std::size_t permutation_limit = 2048) {
  UContext ctx;
  ctx.p = p;
  ctx.m = m;
  ctx.arith = UArith(p, m);
  if (!ctx.arith.phi_has_order_p()) throw Error(ErrorKind::action_not_automorphism, "phi does not have order p");
  const auto& ar = ctx.arith;
  if (ar.order() > limits().max_elements) throw Error(ErrorKind::cap_exceeded, "|U| exceeds the element cap");
  auto mul = [ar](std::uint32_t x, std::uint32_t y) { return ar.index(ar.mul(ar.element(x), ar.element(y))); };
  auto inv = [ar](std::uint32_t x) { return ar.index(ar.inv(ar.element(x))); };
  std::uint32_t gens[] = {ar.index(ar.a(0)), ar.index(ar.b0())};
  ctx.group = indexed_group(mul, inv, gens);
  if (ctx.group.order() != ar.order()) throw Error(ErrorKind::order_mismatch, "U has the wrong order");
  for (std::size_t i = 0; i < p; ++i) ctx.a.push_back(ctx.id_of(ar.a(i)));
  ctx.b0 = ctx.group.generator(1);
  if (ar.order() <= permutation_limit) {
    std::vector<std::uint32_t> g(gens, gens + 2);
    ctx.permutation = regular_representation(ar.order(), mul, g);
  }
  return ctx;
}

/// D = <a_0^{p^{m-1}} a_{p-1}^{p^{m-2}}>.
inline ElementId d_generator(const UContext& ctx) {
  const auto& g = ctx.group;
  return g.mul(g.pow(ctx.a[0], static_cast<i64>(ipow(ctx.p, ctx.m - 1))),
               g.pow(ctx.a[ctx.p - 1], static_cast<i64>(ipow(ctx.p, ctx.m - 2))));
}

inline Subgroup subgroup_D(const UContext& ctx) {
  auto d = closure(ctx.group, {d_generator(ctx)});
  if (d.order() != ctx.p || !is_normal(ctx.group, d))
    throw Error(ErrorKind::precondition_violated, "D is not a normal subgroup of order p");
  return d;
}

/// <b0^p> W
inline Subgroup subgroup_M(const UContext& ctx) {
  std::vector<ElementId> gens(ctx.a);
  gens.push_back(ctx.group.pow(ctx.b0, static_cast<i64>(ctx.p)));
  return closure(ctx.group, gens);
}

/// U' as the generators a_1 .. a_{p-1}.
inline Subgroup derived_by_generators(const UContext& ctx) {
  return closure(ctx.group, std::span<const ElementId>(ctx.a.data() + 1, ctx.a.size() - 1));
}

/// <a_0^p, a_1, ..., a_{p-1}, b0^p>
inline Subgroup frattini_by_generators(const UContext& ctx) {
  std::vector<ElementId> gens{ctx.group.pow(ctx.a[0], static_cast<i64>(ctx.p))};
  gens.insert(gens.end(), ctx.a.begin() + 1, ctx.a.end());
  gens.push_back(ctx.group.pow(ctx.b0, static_cast<i64>(ctx.p)));
  return closure(ctx.group, gens);
}

/// Whether N satisfies the defining conditions of the family of normal subgroups:
/// D <= N <= Phi(U), N normal, N meets <a_0> trivially, U' not inside N.
inline bool in_script_N(const UContext& ctx, const Subgroup& n, const Subgroup& d, const Subgroup& phi,
                        const Subgroup& derived) {
  const auto& g = ctx.group;
  if (!is_subset(d, n) || !is_subset(n, phi)) return false;
  for (auto x : n.generators)
    if (!n.contains(g.conj(x, ctx.a[0])) || !n.contains(g.conj(x, ctx.b0))) return false;
  for (ElementId y = g.mul(kIdentity, ctx.a[0]); y != kIdentity; y = g.mul(y, ctx.a[0]))
    if (n.contains(y)) return false;
  return !is_subset(derived, n);
}

/// All members of the family, in lattice order (by order, then members).
inline std::vector<Subgroup> enumerate_script_N(const UContext& ctx) {
  auto d = subgroup_D(ctx);
  auto phi = frattini_by_generators(ctx);
  auto derived = derived_by_generators(ctx);
  auto lat = enumerate_subgroups(ctx.group, d, phi.members);
  std::vector<Subgroup> out;
  for (auto& n : lat.subgroups)
    if (in_script_N(ctx, n, d, phi, derived)) out.push_back(std::move(n));
  return out;
}

/// U/N as a permutation group on cosets; generators are the images of a0, b0.
inline FiniteGroup quotient_UN(const UContext& ctx, const Subgroup& n) { return quotient(ctx.group, n); }

/// Indices into `members` of one representative per isomorphism class of U/N.
inline std::vector<std::size_t> distinct_quotients(const UContext& ctx, const std::vector<Subgroup>& members) {
  std::vector<std::size_t> reps;
  std::vector<FiniteGroup> seen;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto q = quotient_UN(ctx, members[i]);
    bool fresh = true;
    for (const auto& h : seen)
      if (is_isomorphic(q, h)) {
        fresh = false;
        break;
      }
    if (fresh) {
      reps.push_back(i);
      seen.push_back(std::move(q));
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Verification of the basic facts about U

enum class CheckStatus { pass, fail, skip };

constexpr std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "unknown";
}

struct Check {
  std::string label;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

namespace detail {

inline Check make_check(std::string label, bool ok, std::string detail) {
  return Check{std::move(label), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

inline Check skip_check(std::string label, std::string reason) {
  return Check{std::move(label), CheckStatus::skip, std::move(reason)};
}

}  // namespace detail

/// Element-level and subgroup-level facts about U. Items needing a subgroup
/// lattice or a coset enumeration are skipped once |U| exceeds the lattice cap.
inline std::vector<Check> verify_u_facts(const UContext& ctx) {
  using detail::make_check;
  std::vector<Check> out;
  const auto& g = ctx.group;
  const u64 p = ctx.p;
  const unsigned m = ctx.m;
  const std::string tag = "U(" + std::to_string(p) + "," + std::to_string(m) + ")";
  const bool small = g.order() <= limits().lattice_order;

  out.push_back(make_check("lem46.phi-order", ctx.arith.phi_has_order_p(), tag + ": phi^p = id, phi != id"));

  bool iterated = true;
  for (std::size_t i = 0; i < p; ++i)
    iterated = iterated && iterated_commutator(g, ctx.a[0], ctx.b0, static_cast<unsigned>(i)) == ctx.a[i];
  out.push_back(make_check("lem46.i", iterated, tag + ": a_i = [a_0,_i b_0]"));

  const u64 expected = ipow(p, (m - 1) * static_cast<unsigned>(p + 1) + 1);
  out.push_back(make_check("lem46.ii", g.order() == expected,
                           tag + ": |U| = " + std::to_string(g.order()) + ", expected " + std::to_string(expected)));

  auto pres = u_presentation(p, m);
  ElementId images[] = {ctx.a[0], ctx.b0};
  bool relators = true;
  for (const auto& r : pres.relators) relators = relators && evaluate(g, r, images) == kIdentity;
  out.push_back(make_check("lem46.iii.relators", relators, tag + ": relators hold in U"));
  try {
    auto t = todd_coxeter(pres);
    out.push_back(make_check("lem46.iii.enumeration", t.num_cosets == expected,
                             tag + ": coset enumeration gives " + std::to_string(t.num_cosets)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::cap_exceeded) throw;
    out.push_back(detail::skip_check("lem46.iii.enumeration", "skipped: over cap (" + std::string(e.what()) + ")"));
  }

  auto mm = subgroup_M(ctx);
  out.push_back(make_check("lem46.iv", is_abelian(g, mm) && mm.order() * p == g.order(),
                           tag + ": <b0^p>W abelian of index p"));
  bool class2 = true;
  auto derived = derived_subgroup(g);
  for (auto x : derived.generators)
    for (auto y : derived.generators) class2 = class2 && g.mul(x, y) == g.mul(y, x);
  out.push_back(make_check("lem46.iv.derived-abelian", class2, tag + ": U' abelian, so U is metabelian"));

  auto dg = derived_by_generators(ctx);
  const u64 dorder = ipow(p, (m - 1) * static_cast<unsigned>(p - 1));
  out.push_back(make_check("lem46.v", dg == derived && derived.order() == dorder && exponent(g, derived) == ipow(p, m - 1),
                           tag + ": |U'| = " + std::to_string(derived.order()) + ", expected " + std::to_string(dorder)));

  auto fg = frattini_by_generators(ctx);
  auto fp = frattini_pgroup(g, p);
  out.push_back(make_check("lem46.vi", fg == fp, tag + ": Phi(U) = <a_0^p, a_1..a_{p-1}, b_0^p>"));

  const ElementId pivot = g.pow(ctx.a[p - 1], static_cast<i64>(ipow(p, m - 2)));
  if (small) {
    auto lat = enumerate_subgroups(g, trivial_subgroup(), derived.members);
    bool ok = pivot != kIdentity;
    std::size_t normal_count = 0;
    for (const auto& k : lat.subgroups) {
      if (k.order() == 1 || !is_normal(g, k)) continue;
      ++normal_count;
      ok = ok && k.contains(pivot);
    }
    out.push_back(make_check("lem46.vii.pivot", ok,
                             tag + ": " + std::to_string(normal_count) + " non-trivial normal subgroups of U' contain the pivot"));
  } else {
    out.push_back(detail::skip_check("lem46.vii.pivot", "skipped: over cap (|U| > lattice cap)"));
  }

  // Elements of U/D outside M/D have order dividing p^{m-1}: u^{p^{m-1}} lies in D.
  auto d = subgroup_D(ctx);
  bool expt = true;
  const auto pm1 = static_cast<i64>(ipow(p, m - 1));
  for (ElementId x = 0; x < g.order() && expt; ++x)
    if (!mm.contains(x)) expt = d.contains(g.pow(x, pm1));
  out.push_back(make_check("thmE.expt", expt, tag + ": elements of U/D outside M/D have order dividing p^(m-1)"));

  if (ctx.permutation) {
    bool same = ctx.permutation->order() == g.order();
    // ids follow the same BFS over the same generators, so tables must coincide
    for (ElementId x = 0; x < g.order() && same; ++x)
      for (std::size_t s = 0; s < 2 && same; ++s) same = ctx.permutation->mul_gen(x, s) == g.mul_gen(x, s);
    out.push_back(make_check("U.native-vs-permutation", same, tag + ": native and permutation tables agree"));
  }
  return out;
}

}  // namespace expcrit
