// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"
#include "permutation.hpp"

namespace expcrit {

using ElementId = std::uint32_t;
inline constexpr ElementId kIdentity = 0;

/// How group elements are stored and multiplied. Every element is a fixed-width
/// word sequence ("code"); permutation carriers store image sequences.
struct Carrier {
  std::size_t width = 0;
  bool permutation = false;
  std::function<void(const std::uint32_t*, const std::uint32_t*, std::uint32_t*)> compose;
  std::function<void(const std::uint32_t*, std::uint32_t*)> invert;
};

inline Carrier permutation_carrier(std::size_t degree) {
  Carrier c;
  c.width = degree;
  c.permutation = true;
  c.compose = [degree](const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out) {
    for (std::size_t i = 0; i < degree; ++i) out[i] = y[x[i]];
  };
  c.invert = [degree](const std::uint32_t* x, std::uint32_t* out) {
    for (std::uint32_t i = 0; i < degree; ++i) out[x[i]] = i;
  };
  return c;
}

/// A carrier whose codes are indices 0..n-1 of an externally defined group law.
/// Index 0 must be the identity.
inline Carrier indexed_carrier(std::function<std::uint32_t(std::uint32_t, std::uint32_t)> mul,
                               std::function<std::uint32_t(std::uint32_t)> inv) {
  Carrier c;
  c.width = 1;
  c.permutation = false;
  c.compose = [mul](const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out) {
    out[0] = mul(x[0], y[0]);
  };
  c.invert = [inv](const std::uint32_t* x, std::uint32_t* out) { out[0] = inv(x[0]); };
  return c;
}

/// A finite group with a materialized element table.
///
/// Element ids come from a breadth-first closure starting at the identity (id 0),
/// expanding each element by right multiplication with the generators in
/// declaration order. The object is immutable once built.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::size_t order() const { return order_; }
  std::size_t degree() const { return carrier_.permutation ? carrier_.width : 0; }
  bool is_permutation_group() const { return carrier_.permutation; }
  std::size_t code_width() const { return carrier_.width; }

  std::size_t num_generators() const { return gens_.size(); }
  const std::vector<ElementId>& generators() const { return gens_; }
  ElementId generator(std::size_t i) const { return gens_[i]; }

  ElementId mul(ElementId a, ElementId b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    thread_local std::vector<std::uint32_t> scratch;
    scratch.resize(carrier_.width);
    carrier_.compose(code_ptr(a), code_ptr(b), scratch.data());
    auto id = lookup(scratch.data());
    if (!id) throw Error(ErrorKind::precondition_violated, "product left the element table");
    return *id;
  }
  ElementId mul_gen(ElementId a, std::size_t g) const { return gen_table_[a * gens_.size() + g]; }
  ElementId inv(ElementId a) const { return inv_[a]; }
  std::uint32_t order_of(ElementId a) const { return orders_[a]; }

  ElementId pow(ElementId a, i64 n) const {
    i64 o = orders_[a];
    n = mod(n, o);
    ElementId result = kIdentity, base = a;
    while (n > 0) {
      if (n & 1) result = mul(result, base);
      base = mul(base, base);
      n >>= 1;
    }
    return result;
  }

  ElementId conj(ElementId x, ElementId g) const { return mul(mul(inv(g), x), g); }

  std::span<const std::uint32_t> code(ElementId a) const {
    return {codes_.data() + static_cast<std::size_t>(a) * carrier_.width, carrier_.width};
  }

  Permutation permutation(ElementId a) const {
    if (!carrier_.permutation) throw Error(ErrorKind::precondition_violated, "not a permutation group");
    auto c = code(a);
    return Permutation(std::vector<std::uint32_t>(c.begin(), c.end()));
  }

  std::optional<ElementId> find(std::span<const std::uint32_t> c) const {
    if (c.size() != carrier_.width) return std::nullopt;
    return lookup(c.data());
  }

  std::optional<ElementId> find(const Permutation& p) const { return find(p.images()); }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (mul(gens_[i], gens_[j]) != mul(gens_[j], gens_[i])) return false;
    return true;
  }

  /// BFS tree: element x = parent(x) * generator(parent_generator(x)).
  ElementId parent(ElementId x) const { return parent_[x]; }
  std::uint32_t parent_generator(ElementId x) const { return parent_gen_[x]; }

  bool has_cayley_table() const { return !table_.empty(); }

  friend FiniteGroup materialize(Carrier carrier, std::span<const std::uint32_t> identity,
                                 std::span<const std::uint32_t> generator_codes);

 private:
  const std::uint32_t* code_ptr(ElementId a) const {
    return codes_.data() + static_cast<std::size_t>(a) * carrier_.width;
  }

  static std::uint64_t hash_words(const std::uint32_t* c, std::size_t w) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < w; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ull;
    }
    h ^= h >> 31;
    h *= 0x9e3779b97f4a7c15ull;
    return h ^ (h >> 29);
  }

  std::optional<ElementId> lookup(const std::uint32_t* c) const {
    if (slots_.empty()) return std::nullopt;
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_words(c, carrier_.width) & mask;; s = (s + 1) & mask) {
      ElementId id = slots_[s];
      if (id == kEmpty) return std::nullopt;
      if (std::equal(c, c + carrier_.width, code_ptr(id))) return id;
    }
  }

  void insert_slot(ElementId id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_words(code_ptr(id), carrier_.width) & mask;
    while (slots_[s] != kEmpty) s = (s + 1) & mask;
    slots_[s] = id;
  }

  void grow_slots() {
    std::size_t cap = slots_.empty() ? 64 : slots_.size() * 2;
    slots_.assign(cap, kEmpty);
    for (ElementId id = 0; id < order_; ++id) insert_slot(id);
  }

  static constexpr ElementId kEmpty = 0xffffffffu;

  Carrier carrier_;
  std::size_t order_ = 0;
  std::vector<std::uint32_t> codes_;
  std::vector<ElementId> slots_;
  std::vector<ElementId> gens_;
  std::vector<ElementId> gen_table_;
  std::vector<ElementId> parent_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<ElementId> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<ElementId> table_;
};

/// Breadth-first closure of the generator codes under the carrier's product.
inline FiniteGroup materialize(Carrier carrier, std::span<const std::uint32_t> identity,
                               std::span<const std::uint32_t> generator_codes) {
  const std::size_t w = carrier.width;
  if (identity.size() != w || (w > 0 && generator_codes.size() % w != 0))
    throw Error(ErrorKind::degree_mismatch, "generator codes do not match the carrier width");
  const std::size_t ng = w == 0 ? 0 : generator_codes.size() / w;
  const auto& lim = limits();

  FiniteGroup g;
  g.carrier_ = std::move(carrier);
  g.codes_.assign(identity.begin(), identity.end());
  g.order_ = 1;
  g.parent_.push_back(kIdentity);
  g.parent_gen_.push_back(0);
  g.grow_slots();

  std::vector<std::uint32_t> scratch(w);
  for (ElementId x = 0; x < g.order_; ++x) {
    for (std::size_t j = 0; j < ng; ++j) {
      g.carrier_.compose(g.code_ptr(x), generator_codes.data() + j * w, scratch.data());
      auto found = g.lookup(scratch.data());
      ElementId y;
      if (found) {
        y = *found;
      } else {
        if (g.order_ >= lim.max_elements)
          throw Error(ErrorKind::cap_exceeded,
                      "group exceeds " + std::to_string(lim.max_elements) + " elements");
        if ((g.order_ + 1) * w > lim.max_code_words)
          throw Error(ErrorKind::cap_exceeded, "element table exceeds the memory cap");
        y = static_cast<ElementId>(g.order_++);
        g.codes_.insert(g.codes_.end(), scratch.begin(), scratch.end());
        g.parent_.push_back(x);
        g.parent_gen_.push_back(static_cast<std::uint32_t>(j));
        if (2 * g.order_ > g.slots_.size()) g.grow_slots();
        else g.insert_slot(y);
      }
      g.gen_table_.push_back(y);
    }
  }
  const std::size_t n = g.order_;

  for (std::size_t j = 0; j < ng; ++j) g.gens_.push_back(*g.lookup(generator_codes.data() + j * w));

  if (n <= lim.cayley_table_order) {
    g.table_.resize(n * n);
    for (ElementId a = 0; a < n; ++a) {
      ElementId* row = g.table_.data() + static_cast<std::size_t>(a) * n;
      row[0] = a;
      for (ElementId b = 1; b < n; ++b) row[b] = g.gen_table_[row[g.parent_[b]] * ng + g.parent_gen_[b]];
    }
  }

  g.inv_.resize(n);
  for (ElementId a = 0; a < n; ++a) {
    g.carrier_.invert(g.code_ptr(a), scratch.data());
    g.inv_[a] = *g.lookup(scratch.data());
  }

  g.orders_.assign(n, 0);
  g.orders_[0] = 1;
  for (ElementId a = 1; a < n; ++a) {
    if (g.orders_[a] != 0) continue;
    std::uint32_t k = 1;
    ElementId x = a;
    while (x != kIdentity) {
      x = g.mul(x, a);
      ++k;
    }
    g.orders_[a] = k;
    // Powers coprime to k share the order.
    x = a;
    for (std::uint32_t e = 1; e < k; ++e) {
      if (std::gcd(e, k) == 1) g.orders_[x] = k;
      x = g.mul(x, a);
    }
  }
  return g;
}

/// Materializes the permutation group generated by `generators`.
/// An empty generator list gives the trivial group on `degree` points.
inline FiniteGroup materialize(std::span<const Permutation> generators, std::size_t degree = 0) {
  if (!generators.empty()) degree = generators.front().degree();
  if (degree == 0) degree = 1;
  std::vector<std::uint32_t> codes;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw Error(ErrorKind::degree_mismatch, "generators act on different point sets");
    codes.insert(codes.end(), g.images().begin(), g.images().end());
  }
  auto id = Permutation::identity(degree);
  return materialize(permutation_carrier(degree), id.images(), codes);
}

inline FiniteGroup materialize(std::initializer_list<Permutation> generators) {
  std::vector<Permutation> v(generators);
  return materialize(std::span<const Permutation>(v));
}

/// Right regular representation of an abstract group on indices 0..n-1
/// (index 0 the identity). Generator g acts by x -> mul(x, g).
inline FiniteGroup regular_representation(std::size_t n,
                                          const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul,
                                          std::span<const std::uint32_t> generator_indices) {
  std::vector<Permutation> gens;
  for (auto g : generator_indices) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t x = 0; x < n; ++x) img[x] = mul(x, g);
    gens.emplace_back(std::move(img));
  }
  return materialize(std::span<const Permutation>(gens), n);
}

/// Materializes an abstract group on indices 0..n-1 without permutations.
inline FiniteGroup indexed_group(std::function<std::uint32_t(std::uint32_t, std::uint32_t)> mul,
                                 std::function<std::uint32_t(std::uint32_t)> inv,
                                 std::span<const std::uint32_t> generator_indices) {
  std::uint32_t identity = 0;
  return materialize(indexed_carrier(std::move(mul), std::move(inv)),
                     std::span<const std::uint32_t>(&identity, 1), generator_indices);
}

// ---------------------------------------------------------------------------
// Element-level operations

inline std::uint32_t element_order(const FiniteGroup& g, ElementId x) { return g.order_of(x); }

/// Least common multiple of all element orders.
inline u64 exponent(const FiniteGroup& g) {
  u64 e = 1;
  for (ElementId x = 0; x < g.order(); ++x) e = std::lcm(e, static_cast<u64>(g.order_of(x)));
  return e;
}

/// [x, y] = x^-1 y^-1 x y
inline ElementId commutator(const FiniteGroup& g, ElementId x, ElementId y) {
  return g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
}

/// [x,_0 b] = x and [x,_i b] = [[x,_{i-1} b], b].
inline ElementId iterated_commutator(const FiniteGroup& g, ElementId x, ElementId b, unsigned i) {
  for (unsigned k = 0; k < i; ++k) x = commutator(g, x, b);
  return x;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupHom {
  std::vector<ElementId> generator_images;
  std::vector<ElementId> map;

  ElementId operator()(ElementId x) const { return map[x]; }

  std::vector<ElementId> kernel() const {
    std::vector<ElementId> k;
    for (ElementId x = 0; x < map.size(); ++x)
      if (map[x] == kIdentity) k.push_back(x);
    return k;
  }

  bool injective() const { return kernel().size() == 1; }

  std::vector<ElementId> image() const {
    std::vector<ElementId> im(map);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }
};

/// Extends generator images along the BFS tree of `source` and verifies that
/// every defining edge x -> x * g_i is respected.
inline GroupHom hom_from_images(const FiniteGroup& source, const FiniteGroup& target,
                                std::span<const ElementId> images) {
  if (images.size() != source.num_generators())
    throw Error(ErrorKind::invalid_parameters, "one image per source generator required");
  for (auto y : images)
    if (y >= target.order()) throw Error(ErrorKind::invalid_parameters, "image id out of range");
  GroupHom h;
  h.generator_images.assign(images.begin(), images.end());
  h.map.assign(source.order(), kIdentity);
  for (ElementId x = 1; x < source.order(); ++x)
    h.map[x] = target.mul(h.map[source.parent(x)], images[source.parent_generator(x)]);
  for (ElementId x = 0; x < source.order(); ++x) {
    for (std::size_t i = 0; i < source.num_generators(); ++i) {
      if (h.map[source.mul_gen(x, i)] != target.mul(h.map[x], images[i]))
        throw Error(ErrorKind::not_a_homomorphism, "relation violated at element " + std::to_string(x) +
                                                       " times generator " + std::to_string(i));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Standard groups

inline FiniteGroup trivial_group() { return materialize(std::span<const Permutation>{}, 1); }

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_parameters, "cyclic group of order 0");
  if (n == 1) return trivial_group();
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>((i + 1) % n);
  Permutation r(std::move(img));
  return materialize({r});
}

/// Dihedral group of order `n` (n even, n >= 4), acting on n/2 points
/// (the Klein four-group on 4 points when n = 4).
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorKind::invalid_parameters, "dihedral order must be even and >= 4");
  if (n == 4) return materialize({Permutation::from_cycles("(1 2)(3 4)"), Permutation::from_cycles("(1 3)(2 4)")});
  std::size_t k = n / 2;
  std::vector<std::uint32_t> rot(k), ref(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % k);
    ref[i] = static_cast<std::uint32_t>((k - i) % k);
  }
  return materialize({Permutation(std::move(rot)), Permutation(std::move(ref))});
}

/// Dicyclic group of order n = 4k (k >= 2): <a, x | a^{2k}, x^2 = a^k, a^x = a^-1>.
/// For n a power of two this is the generalized quaternion group.
inline FiniteGroup dicyclic_group(std::size_t n) {
  if (n < 8 || n % 4 != 0) throw Error(ErrorKind::invalid_parameters, "dicyclic order must be a multiple of 4, >= 8");
  const std::uint32_t k = static_cast<std::uint32_t>(n / 4), two_k = 2 * k;
  // index = e + 2k * j  for a^e x^j
  auto mul = [k, two_k](std::uint32_t u, std::uint32_t v) -> std::uint32_t {
    i64 e1 = u % two_k, j1 = u / two_k, e2 = v % two_k, j2 = v / two_k;
    i64 e = j1 == 0 ? e1 + e2 : e1 - e2;
    i64 j = j1 + j2;
    if (j == 2) {
      j = 0;
      e += k;
    }
    return static_cast<std::uint32_t>(mod(e, two_k) + two_k * j);
  };
  std::uint32_t gens[] = {1, two_k};
  return regular_representation(n, mul, gens);
}

inline FiniteGroup symmetric_group(std::size_t n) {
  if (n <= 1) return trivial_group();
  if (n == 2) return materialize({Permutation::from_cycles("(1 2)")});
  std::vector<std::uint32_t> cyc(n);
  for (std::uint32_t i = 0; i < n; ++i) cyc[i] = static_cast<std::uint32_t>((i + 1) % n);
  return materialize({Permutation::from_cycles("(1 2)", n), Permutation(std::move(cyc))});
}

inline FiniteGroup alternating_group(std::size_t n) {
  if (n <= 2) return trivial_group();
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i)
    gens.push_back(Permutation::from_cycles("(1 2 " + std::to_string(i + 1) + ")", n));
  return materialize(std::span<const Permutation>(gens));
}

/// Z_{m_1} x ... x Z_{m_k} on disjoint cycles; generator i is the unit vector e_i.
inline FiniteGroup abelian_group(std::span<const std::size_t> moduli) {
  std::size_t degree = 0;
  for (auto m : moduli) degree += m;
  if (degree == 0) return trivial_group();
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (auto m : moduli) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t i = 0; i < m; ++i) img[offset + i] = static_cast<std::uint32_t>(offset + (i + 1) % m);
    gens.emplace_back(std::move(img));
    offset += m;
  }
  return materialize(std::span<const Permutation>(gens), degree);
}

/// Element e_1^{v_1} ... e_k^{v_k} of a group whose first k generators are e_i.
inline ElementId word_in_generators(const FiniteGroup& g, std::span<const i64> exponents) {
  ElementId x = kIdentity;
  for (std::size_t i = 0; i < exponents.size(); ++i) x = g.mul(x, g.pow(g.generator(i), exponents[i]));
  return x;
}

// ---------------------------------------------------------------------------
// Products

struct EmbeddedProduct {
  FiniteGroup group;
  std::vector<ElementId> left;   // id in left factor -> id in product
  std::vector<ElementId> right;  // id in right factor -> id in product
};

/// G x H. Permutation factors act on disjoint point sets; otherwise the product
/// is realized by its regular representation on pairs.
inline EmbeddedProduct direct_product_embedded(const FiniteGroup& g, const FiniteGroup& h) {
  EmbeddedProduct out;
  if (static_cast<u64>(g.order()) * h.order() > limits().max_elements)
    throw Error(ErrorKind::cap_exceeded, "direct product exceeds the element cap");
  if (g.is_permutation_group() && h.is_permutation_group()) {
    const std::size_t dg = g.degree(), dh = h.degree(), d = dg + dh;
    std::vector<Permutation> gens;
    for (auto x : g.generators()) {
      auto c = g.code(x);
      std::vector<std::uint32_t> img(d);
      std::iota(img.begin(), img.end(), 0u);
      std::copy(c.begin(), c.end(), img.begin());
      gens.emplace_back(std::move(img));
    }
    for (auto y : h.generators()) {
      auto c = h.code(y);
      std::vector<std::uint32_t> img(d);
      std::iota(img.begin(), img.end(), 0u);
      for (std::size_t i = 0; i < dh; ++i) img[dg + i] = static_cast<std::uint32_t>(dg + c[i]);
      gens.emplace_back(std::move(img));
    }
    out.group = materialize(std::span<const Permutation>(gens), d);
  } else {
    const std::uint32_t nh = static_cast<std::uint32_t>(h.order());
    auto mul = [&g, &h, nh](std::uint32_t u, std::uint32_t v) {
      return g.mul(u / nh, v / nh) * nh + h.mul(u % nh, v % nh);
    };
    std::vector<std::uint32_t> gens;
    for (auto x : g.generators()) gens.push_back(x * nh);
    for (auto y : h.generators()) gens.push_back(y);
    out.group = regular_representation(g.order() * h.order(), mul, gens);
  }
  if (out.group.order() != g.order() * h.order())
    throw Error(ErrorKind::order_mismatch, "direct product has the wrong order");
  const std::size_t ng = g.num_generators();
  std::vector<ElementId> gi(out.group.generators().begin(), out.group.generators().begin() + static_cast<long>(ng));
  std::vector<ElementId> hi(out.group.generators().begin() + static_cast<long>(ng), out.group.generators().end());
  out.left = hom_from_images(g, out.group, gi).map;
  out.right = hom_from_images(h, out.group, hi).map;
  return out;
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  return direct_product_embedded(g, h).group;
}

/// Base x| C_{top_order}, where the top generator c acts by c^-1 x c = alpha(x) and
/// alpha is the automorphism of `base` sending generator i to `generator_images[i]`.
///
/// Realized by the regular action on pairs (t, x) <-> c^t x, so the degree equals the
/// group order. Generators of the result: the base generators, then c.
inline FiniteGroup semidirect_product(const FiniteGroup& base, std::size_t top_order,
                                      std::span<const ElementId> generator_images) {
  if (top_order == 0) throw Error(ErrorKind::invalid_parameters, "top order must be positive");
  GroupHom alpha;
  try {
    alpha = hom_from_images(base, base, generator_images);
  } catch (const Error& e) {
    throw Error(ErrorKind::action_not_automorphism, e.what());
  }
  if (!alpha.injective()) throw Error(ErrorKind::action_not_automorphism, "action is not bijective");
  // Powers alpha^0 .. alpha^{k-1} where k is the order of alpha.
  std::vector<std::vector<ElementId>> powers;
  std::vector<ElementId> current(base.order());
  std::iota(current.begin(), current.end(), 0u);
  do {
    powers.push_back(current);
    for (auto& v : current) v = alpha.map[v];
    if (powers.size() > top_order) break;
  } while (current != powers.front());
  const std::size_t alpha_order = powers.size();
  if (top_order % alpha_order != 0)
    throw Error(ErrorKind::order_mismatch, "automorphism order " + std::to_string(alpha_order) +
                                               " does not divide " + std::to_string(top_order));
  const std::size_t n = base.order() * top_order;
  if (n > limits().max_elements) throw Error(ErrorKind::cap_exceeded, "semidirect product exceeds the element cap");
  const std::uint32_t top = static_cast<std::uint32_t>(top_order);
  auto mul = [&](std::uint32_t u, std::uint32_t v) -> std::uint32_t {
    std::uint32_t t1 = u % top, x1 = u / top, t2 = v % top, x2 = v / top;
    ElementId x = base.mul(powers[t2 % alpha_order][x1], x2);
    return x * top + (t1 + t2) % top;
  };
  std::vector<std::uint32_t> gens;
  for (auto x : base.generators()) gens.push_back(x * top);
  gens.push_back(top > 1 ? 1u : 0u);
  auto g = regular_representation(n, mul, gens);
  if (g.order() != n) throw Error(ErrorKind::order_mismatch, "semidirect product has the wrong order");
  return g;
}

}  // namespace expcrit
