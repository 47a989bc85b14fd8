#include <catch_amalgamated.hpp>

#include "expcrit/families.hpp"
#include "expcrit/witness.hpp"
#include "oracles.hpp"

using namespace expcrit;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::undecided;
}

/// Exponent-critical by the definition: some prime has no witness among all proper subgroups.
bool critical_bruteforce(const FiniteGroup& g) {
  for (auto p : prime_divisors(g.order()))
    if (!oracle::has_witness_bruteforce(g, p)) return true;
  return false;
}

}  // namespace

TEST_CASE("irreducible cyclic actions") {
  auto a = irreducible_cyclic_action(3, 1, 2, 8);
  REQUIRE(a.matrix.order() == 8);
  REQUIRE(acts_irreducibly(a.matrix, 3));
  // brute-force subspace scan: no line of F_3^2 is invariant
  for (i64 x = 0; x < 3; ++x)
    for (i64 y = 0; y < 3; ++y) {
      if (x == 0 && y == 0) continue;
      auto w = a.matrix.apply({x, y});
      bool proportional = false;
      for (i64 s = 1; s < 3; ++s) proportional |= (w[0] == s * x % 3 && w[1] == s * y % 3);
      REQUIRE(!proportional);
    }

  auto b = irreducible_cyclic_action(2, 2, 2, 3);
  REQUIRE(b.matrix.modulus() == 4);
  REQUIRE(b.matrix.order() == 3);
  IntMatrix fib(2, 2);
  fib(0, 1) = 1;
  fib(1, 0) = 1;
  fib(1, 1) = 1;
  REQUIRE(b.matrix.reduced(2).order() == 3);
  // the chosen polynomial is x^2 + x + 1; its lift is a power of [[0,1],[1,1]] mod 4
  IntMatrix lift = fib.reduced(4);
  bool is_power = false;
  for (u64 e = 1; e <= 6; ++e) is_power |= lift.pow(e) == b.matrix;
  REQUIRE(is_power);

  auto c = irreducible_cyclic_action(7, 2, 1, 3);
  REQUIRE(c.matrix.size() == 1);
  REQUIRE(multiplicative_order(static_cast<u64>(c.matrix(0, 0)), 49) == 3);

  REQUIRE(kind_of([] { irreducible_cyclic_action(2, 1, 2, 9); }) == ErrorKind::no_such_order);
  REQUIRE(kind_of([] { irreducible_cyclic_action(3, 1, 2, 2); }) == ErrorKind::no_such_order);
}

TEST_CASE("minimal non-abelian groups of order divisible by two primes") {
  auto a4 = minimal_nonabelian_pq(2, 2, 3, 1);
  REQUIRE(a4.order() == 12);
  REQUIRE(is_isomorphic(a4, alternating_group(4)));
  auto s3 = minimal_nonabelian_pq(3, 1, 2, 1);
  REQUIRE(is_isomorphic(s3, symmetric_group(3)));
  // Z9 acting through its order-3 quotient
  auto g36 = minimal_nonabelian_pq(2, 2, 3, 2);
  REQUIRE(g36.order() == 36);
  REQUIRE(is_minimal_nonabelian(g36));
  REQUIRE(kind_of([] { minimal_nonabelian_pq(2, 3, 3, 1); }) == ErrorKind::no_such_order);
}

TEST_CASE("prime-power cyclic times minimal non-abelian") {
  auto g = family_B(5, 1, alternating_group(4));
  REQUIRE(g.order() == 60);
  auto rep = analyze(g);
  REQUIRE(rep.exponent_critical);
  for (const auto& w : rep.witnesses) REQUIRE(w.found() == (w.prime != 5));
  REQUIRE(critical_bruteforce(g));
  REQUIRE(kind_of([] { family_B(5, 1, dihedral_group(12)); }) == ErrorKind::precondition_violated);
  REQUIRE(kind_of([] { family_B(2, 1, alternating_group(4)); }) == ErrorKind::precondition_violated);
  REQUIRE(kind_of([] { family_B(5, 1, dihedral_group(8)); }) == ErrorKind::precondition_violated);
}

TEST_CASE("family C1") {
  auto g = family_C1(3, 1, dicyclic_group(8));
  REQUIRE(g.order() == 24);
  REQUIRE(analyze(g).exponent_critical);
  REQUIRE(critical_bruteforce(g));
  auto h = family_C1(3, 2, dihedral_group(8));
  REQUIRE(h.order() == 72);
  auto rep = analyze(h);
  REQUIRE(rep.exponent_critical);
  REQUIRE(!rep.witnesses[1].found());
  REQUIRE(critical_bruteforce(h));
  std::size_t m[] = {2, 2};
  REQUIRE(kind_of([&] { family_C1(3, 1, abelian_group(m)); }) == ErrorKind::precondition_violated);
  REQUIRE(kind_of([] { family_C1(2, 1, dihedral_group(8)); }) == ErrorKind::precondition_violated);
}

TEST_CASE("family C2") {
  auto g = family_C2(2, 2, 2, 3, 1);
  REQUIRE(g.order() == 48);
  auto rep = analyze(g);
  REQUIRE(rep.exponent_critical);
  REQUIRE(!rep.witnesses[0].found());
  REQUIRE(critical_bruteforce(g));
  REQUIRE(is_isomorphic(family_C2(2, 1, 2, 3, 1), alternating_group(4)));
  REQUIRE(is_isomorphic(family_C2(5, 1, 1, 2, 1), dihedral_group(10)));
  // normal abelian Sylow p-subgroup with |G : C_G(P)| = q
  auto p2 = sylow_subgroup(g, 2);
  REQUIRE(is_normal(g, p2));
  REQUIRE(is_abelian(g, p2));
  REQUIRE(g.order() / centralizer(g, p2).order() == 3);
  auto g2 = family_C2(2, 1, 2, 3, 2);
  REQUIRE(g2.order() == 36);
  REQUIRE(g2.order() / centralizer(g2, sylow_subgroup(g2, 2)).order() == 3);
}

TEST_CASE("family C3") {
  auto g = family_C3(3, 2, 1, 2, 1);
  REQUIRE(g.order() == 54);
  REQUIRE(analyze(g).exponent_critical);
  REQUIRE(critical_bruteforce(g));
  auto h = family_C3(2, 2, 2, 3, 1);
  REQUIRE(h.order() == 48);
  REQUIRE(analyze(h).exponent_critical);
  REQUIRE(critical_bruteforce(h));
  auto p3 = sylow_subgroup(g, 3);
  REQUIRE(is_normal(g, p3));
  REQUIRE(g.order() / centralizer(g, p3).order() == 2);
  REQUIRE(kind_of([] { family_C3(3, 1, 1, 2, 1); }) == ErrorKind::m_too_small);
}

TEST_CASE("extraspecial groups") {
  auto h = extraspecial(3, 1, ExtraspecialSign::plus);
  REQUIRE(h.order() == 27);
  REQUIRE(exponent(h) == 3);
  REQUIRE(is_special(h));
  REQUIRE(center(h).order() == 3);
  auto m = extraspecial(3, 1, ExtraspecialSign::minus);
  REQUIRE(exponent(m) == 9);
  REQUIRE(is_special(m));
  REQUIRE(is_isomorphic(extraspecial(2, 1, ExtraspecialSign::plus), dihedral_group(8)));
  REQUIRE(is_isomorphic(extraspecial(2, 1, ExtraspecialSign::minus), dicyclic_group(8)));
  auto big = extraspecial(3, 2, ExtraspecialSign::plus);
  REQUIRE(big.order() == 243);
  REQUIRE(exponent(big) == 3);
  REQUIRE(center(big).order() == 3);
  REQUIRE(is_special(big));
  auto bigm = extraspecial(3, 2, ExtraspecialSign::minus);
  REQUIRE(exponent(bigm) == 9);
  REQUIRE(center(bigm).order() == 3);
  REQUIRE(!is_isomorphic(big, bigm));
}

TEST_CASE("family C4") {
  C4Shape elem{C4Shape::Kind::elementary, 2, 1, ExtraspecialSign::plus};
  auto g = family_C4(3, elem, 2, 3);
  REQUIRE(g.order() == 72);
  auto rep = analyze(g);
  REQUIRE(rep.exponent_critical);
  REQUIRE(!rep.witnesses[0].found());
  REQUIRE(critical_bruteforce(g));
  auto s2 = sylow_subgroup(g, 2);
  REQUIRE(s2.order() == 8);
  REQUIRE(exponent(g, s2) == 8);
  REQUIRE(!is_normal(g, s2));

  C4Shape es{C4Shape::Kind::extraspecial, 0, 1, ExtraspecialSign::plus};
  auto r = family_C4_detail(3, es, 2, 2);
  REQUIRE(r.group.order() == 108);
  REQUIRE(r.action_order == 4);
  auto rep2 = analyze(r.group);
  REQUIRE(rep2.exponent_critical);
  REQUIRE(!rep2.witnesses[0].found());
  // the top generator centralizes Q'
  auto q = sylow_subgroup(r.group, 3);
  auto qd = derived_subgroup(r.group, q);
  ElementId top = r.group.generators().back();
  for (auto z : qd.members) REQUIRE(r.group.conj(z, top) == z);
  REQUIRE(is_special(as_group(r.group, q)));

  C4Shape z2{C4Shape::Kind::elementary, 1, 1, ExtraspecialSign::plus};
  REQUIRE(kind_of([&] { family_C4(2, z2, 3, 1); }) == ErrorKind::no_such_action);
  C4Shape esm{C4Shape::Kind::extraspecial, 0, 1, ExtraspecialSign::minus};
  REQUIRE(kind_of([&] { family_C4(3, esm, 2, 2); }) == ErrorKind::no_such_action);
}

TEST_CASE("negative controls") {
  // reducible action diag(-1,-1) on (Z3)^2
  std::size_t m[] = {3, 3};
  auto v = abelian_group(m);
  ElementId images[] = {v.inv(v.generator(0)), v.inv(v.generator(1))};
  auto g = semidirect_product(v, 2, images);
  REQUIRE(!analyze(g).exponent_critical);
  REQUIRE(!critical_bruteforce(g));
  // the C3 shape with m = 1 built by hand: (Z3 x Z3) x| Z2, trivial on one factor
  ElementId c3_images[] = {v.generator(0), v.inv(v.generator(1))};
  auto h = semidirect_product(v, 2, c3_images);
  REQUIRE(!analyze(h).exponent_critical);
  // Z3 x D16
  REQUIRE(!analyze(direct_product(cyclic_group(3), dihedral_group(16))).exponent_critical);
}

TEST_CASE("type-B parameter list") {
  REQUIRE(typeB_listed({3, 1, 1, 0, 1}));
  REQUIRE(typeB_listed({3, 1, 1, 1, 1}));
  REQUIRE(!typeB_listed({3, 1, 1, 1, 0}));
  REQUIRE(!typeB_listed({3, 1, 1, 0, 0}));
  REQUIRE(typeB_listed({2, 1, 1, 0, 0}));
  REQUIRE(typeB_listed({2, 1, 1, 1, 1}));
  REQUIRE(!typeB_listed({2, 1, 1, 0, 1}));
  REQUIRE(!typeB_listed({2, 1, 1, 1, 0}));
  REQUIRE(typeB_listed({2, 2, 2, 0, 1}));
  REQUIRE(typeB_listed({2, 3, 1, 1, 0}));
  REQUIRE(!typeB_listed({2, 1, 2, 0, 1}));
  // odd p, alpha + beta <= 3: (1,1,0,1), (1,1,1,1), (2,1,0,1), (2,1,1,1), (2,1,1,0)
  REQUIRE(typeB_parameter_list(3, 3).size() == 5);
  REQUIRE(typeB_parameter_list(2, 3).size() == 5);
}

TEST_CASE("type-B presentations") {
  auto g = typeB_presentation({3, 1, 1, 0, 1});
  REQUIRE(g.order() == 27);
  REQUIRE(exponent(g) == 9);
  REQUIRE(g.order_of(g.generator(0)) == 9);
  auto q8 = typeB_presentation({2, 1, 1, 0, 0});
  REQUIRE(is_isomorphic(q8, dicyclic_group(8)));
  auto d8 = typeB_presentation({2, 1, 1, 1, 1});
  REQUIRE(is_isomorphic(d8, dihedral_group(8)));
  REQUIRE(kind_of([] { typeB_presentation({2, 1, 1, 1, 0}); }) == ErrorKind::invalid_parameters);
  for (auto t : typeB_parameter_list(3, 3)) {
    auto h = typeB_presentation(t);
    REQUIRE(h.order() == ipow(3, t.alpha + t.beta + 1));
    REQUIRE(classify_pgroup(h) == PGroupType::typeB);
    REQUIRE(derived_subgroup(h).order() == 3);
  }
}
