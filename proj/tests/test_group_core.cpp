#include <catch_amalgamated.hpp>

#include <random>

#include "expcrit/group.hpp"
#include "expcrit/structure.hpp"
#include "oracles.hpp"

using namespace expcrit;

namespace {

void check_group_axioms(const FiniteGroup& g) {
  const auto n = static_cast<ElementId>(g.order());
  if (n <= 200) {
    for (ElementId x = 0; x < n; ++x) {
      REQUIRE(g.mul(x, kIdentity) == x);
      REQUIRE(g.mul(kIdentity, x) == x);
      REQUIRE(g.mul(x, g.inv(x)) == kIdentity);
      for (ElementId y = 0; y < n; ++y)
        for (ElementId z = 0; z < n; ++z) REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
  } else {
    std::mt19937 rng(7);
    std::uniform_int_distribution<ElementId> pick(0, n - 1);
    for (int t = 0; t < 5000; ++t) {
      ElementId x = pick(rng), y = pick(rng), z = pick(rng);
      REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
      REQUIRE(g.mul(x, g.inv(x)) == kIdentity);
    }
  }
  u64 e = exponent(g);
  REQUIRE(g.order() % e == 0);
  for (ElementId x = 0; x < n; ++x) REQUIRE(e % g.order_of(x) == 0);
}

}  // namespace

TEST_CASE("permutations compose on the right and parse cycle notation") {
  auto a = Permutation::from_cycles("(1 2 3)");
  auto b = Permutation::from_cycles("(1 2)", 3);
  // x * y applies x first
  REQUIRE((a * b)(0) == b(a(0)));
  REQUIRE(a.to_cycles() == "(1 2 3)");
  REQUIRE(Permutation::identity(4).to_cycles() == "()");
  REQUIRE((a * a.inverse()).is_identity());
  REQUIRE(Permutation::from_cycles("(1 2)(2 3)").to_cycles() == "(1 3 2)");
  REQUIRE_THROWS_AS(Permutation::from_cycles("(1 2"), Error);
  REQUIRE_THROWS_AS(Permutation::from_cycles("(0 1)"), Error);
  REQUIRE_THROWS_AS(Permutation(std::vector<std::uint32_t>{0, 0}), Error);
  REQUIRE_THROWS_AS(a * Permutation::identity(5), Error);
}

TEST_CASE("materialize: closure sizes agree with a naive closure") {
  SECTION("identity only") {
    auto g = materialize({Permutation::identity(3)});
    REQUIRE(g.order() == 1);
  }
  SECTION("S3 and D8 from the listed generators") {
    std::vector<oracle::Perm> s3{{1, 0, 2}, {1, 2, 0}};
    std::vector<oracle::Perm> d8{{1, 2, 3, 0}, {2, 1, 0, 3}};
    REQUIRE(oracle::closure(s3, 3).size() == 6);
    REQUIRE(oracle::closure(d8, 4).size() == 8);
    auto g = materialize({Permutation(s3[0]), Permutation(s3[1])});
    auto h = materialize({Permutation(d8[0]), Permutation(d8[1])});
    REQUIRE(g.order() == 6);
    REQUIRE(h.order() == 8);
    check_group_axioms(g);
    check_group_axioms(h);
  }
  SECTION("degree mismatch and the element cap") {
    std::vector<Permutation> bad{Permutation::identity(3), Permutation::identity(4)};
    REQUIRE_THROWS_AS(materialize(std::span<const Permutation>(bad)), Error);
    auto saved = limits().max_elements;
    limits().max_elements = 100;
    try {
      symmetric_group(5);
      FAIL("expected cap-exceeded");
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::cap_exceeded);
    }
    limits().max_elements = saved;
  }
  SECTION("element ids follow breadth-first order by generator index") {
    auto g = cyclic_group(5);
    for (ElementId x = 0; x < 5; ++x) REQUIRE(g.pow(g.generator(0), x) == x);
    auto s = symmetric_group(4);
    REQUIRE(s.generator(0) == 1);
    REQUIRE(s.generator(1) == 2);
    // Rerunning gives the same table.
    auto s2 = symmetric_group(4);
    for (ElementId x = 0; x < 24; ++x) REQUIRE(s.permutation(x) == s2.permutation(x));
  }
}

TEST_CASE("element orders and exponents") {
  REQUIRE(element_order(cyclic_group(8), 0) == 1);
  auto c8 = cyclic_group(8);
  REQUIRE(element_order(c8, c8.generator(0)) == 8);
  auto d16 = dihedral_group(16);
  REQUIRE(element_order(d16, d16.generator(1)) == 2);
  for (ElementId x = 0; x < d16.order(); ++x) REQUIRE(d16.order_of(x) == oracle::element_order(d16, x));
  REQUIRE(exponent(d16) == 8);
  REQUIRE(exponent(dihedral_group(24)) == 12);
  REQUIRE(exponent(trivial_group()) == 1);
  auto q16 = dicyclic_group(16);
  REQUIRE(q16.order() == 16);
  REQUIRE(exponent(q16) == 8);
  REQUIRE(dicyclic_group(12).order() == 12);
  REQUIRE(symmetric_group(5).order() == 120);
  REQUIRE(alternating_group(5).order() == 60);
  REQUIRE(exponent(alternating_group(5)) == 30);
  for (const auto* name : {"d24", "a4", "q16", "s4"}) {
    std::string n = name;
    FiniteGroup g = n == "d24" ? dihedral_group(24) : n == "a4" ? alternating_group(4)
                   : n == "q16" ? dicyclic_group(16) : symmetric_group(4);
    check_group_axioms(g);
  }
}

TEST_CASE("commutators") {
  auto d8 = dihedral_group(8);
  ElementId r = d8.generator(0), s = d8.generator(1);
  REQUIRE(d8.order_of(r) == 4);
  REQUIRE(commutator(d8, r, r) == kIdentity);
  REQUIRE(commutator(d8, r, d8.pow(r, 3)) == kIdentity);
  REQUIRE(commutator(d8, r, s) == d8.pow(r, 2));
  REQUIRE(iterated_commutator(d8, r, s, 0) == r);
  REQUIRE(iterated_commutator(d8, r, s, 3) ==
          commutator(d8, commutator(d8, commutator(d8, r, s), s), s));
}

TEST_CASE("direct products") {
  auto g = direct_product(dihedral_group(8), trivial_group());
  REQUIRE(is_isomorphic(g, dihedral_group(8)));
  auto c6 = direct_product(cyclic_group(2), cyclic_group(3));
  REQUIRE(c6.order() == 6);
  REQUIRE(exponent(c6) == 6);
  auto c5a4 = direct_product(cyclic_group(5), alternating_group(4));
  REQUIRE(c5a4.order() == 60);
  REQUIRE(exponent(c5a4) == 30);
  auto dq = direct_product(dihedral_group(6), dicyclic_group(8));
  REQUIRE(exponent(dq) == std::lcm(exponent(dihedral_group(6)), exponent(dicyclic_group(8))));
  check_group_axioms(c5a4);
  check_group_axioms(dq);
}

TEST_CASE("semidirect products") {
  auto c4 = cyclic_group(4);
  ElementId a = c4.generator(0);
  SECTION("inversion on Z4 gives D8") {
    ElementId img[] = {c4.inv(a)};
    auto g = semidirect_product(c4, 2, img);
    REQUIRE(g.order() == 8);
    REQUIRE(is_isomorphic(g, dihedral_group(8)));
    REQUIRE(!is_isomorphic(g, dicyclic_group(8)));
  }
  SECTION("trivial action gives the direct product") {
    ElementId img[] = {a};
    auto g = semidirect_product(c4, 3, img);
    REQUIRE(is_isomorphic(g, direct_product(c4, cyclic_group(3))));
    auto s3 = symmetric_group(3);
    std::vector<ElementId> id(s3.generators());
    REQUIRE(is_isomorphic(semidirect_product(s3, 4, id), direct_product(s3, cyclic_group(4))));
  }
  SECTION("order-8 matrix on (Z3)^2 gives order 72") {
    std::size_t mods[] = {3, 3};
    auto v = abelian_group(mods);
    // companion matrix of x^2 + x + 2 over F3, of order 8: e1 -> e2, e2 -> -2e1 - e2 = e1 + 2e2
    i64 e2[] = {0, 1}, e1e2[] = {1, 2};
    ElementId img[] = {word_in_generators(v, e2), word_in_generators(v, e1e2)};
    auto g = semidirect_product(v, 8, img);
    REQUIRE(g.order() == 72);
    check_group_axioms(g);
  }
  SECTION("invalid actions") {
    ElementId bad[] = {c4.pow(a, 2)};
    try {
      semidirect_product(c4, 2, bad);
      FAIL("expected action-not-automorphism");
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::action_not_automorphism);
    }
    ElementId inv[] = {c4.inv(a)};
    try {
      semidirect_product(c4, 3, inv);
      FAIL("expected order-mismatch");
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::order_mismatch);
    }
  }
}

TEST_CASE("homomorphisms from generator images") {
  auto c4 = cyclic_group(4), c2 = cyclic_group(2), c8 = cyclic_group(8);
  std::vector<ElementId> id(c4.generators());
  auto h = hom_from_images(c4, c4, id);
  for (ElementId x = 0; x < 4; ++x) REQUIRE(h(x) == x);
  ElementId to_c2[] = {c2.generator(0)};
  auto q = hom_from_images(c4, c2, to_c2);
  REQUIRE(q.kernel().size() == 2);
  ElementId to_c8[] = {c8.generator(0)};
  try {
    hom_from_images(c4, c8, to_c8);
    FAIL("expected not-a-homomorphism");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::not_a_homomorphism);
  }
}

TEST_CASE("non-cyclic exponent is the lcm over maximal subgroups") {
  for (auto g : {dihedral_group(16), dihedral_group(24), symmetric_group(4), alternating_group(4),
                 dicyclic_group(12), direct_product(cyclic_group(2), cyclic_group(4))}) {
    u64 e = 1;
    for (const auto& m : maximal_subgroups(g)) e = std::lcm(e, exponent(g, m));
    REQUIRE(e == exponent(g));
  }
}
