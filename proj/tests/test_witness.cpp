#include <catch_amalgamated.hpp>

#include "expcrit/group.hpp"
#include "expcrit/structure.hpp"
#include "expcrit/witness.hpp"
#include "oracles.hpp"

using namespace expcrit;

TEST_CASE("p-parts") {
  REQUIRE(p_part(24, 2) == 8);
  REQUIRE(p_part(360, 3) == 9);
  REQUIRE(p_part(7, 2) == 1);
  REQUIRE_THROWS_AS(p_part(12, 4), Error);
}

TEST_CASE("witness search on the introductory examples") {
  auto d24 = dihedral_group(24);
  auto w3 = find_p_witness(d24, 3);
  REQUIRE(w3.found());
  REQUIRE(*w3.witness_exponent == 6);
  REQUIRE(is_isomorphic(as_group(d24, *w3.witness), dihedral_group(12)));
  auto w2 = find_p_witness(d24, 2);
  REQUIRE(w2.found());
  REQUIRE(*w2.witness_exponent == 4);
  REQUIRE(!is_exponent_critical(d24));

  auto d16 = dihedral_group(16);
  REQUIRE(!find_p_witness(d16, 2).found());
  auto rep = analyze(d16);
  REQUIRE(rep.exponent == 8);
  REQUIRE(rep.exponent_critical);
  REQUIRE(rep.type == PGroupType::typeA);

  std::size_t m[] = {4, 2};
  auto ab = abelian_group(m);
  REQUIRE(!find_p_witness(ab, 2).found());
  REQUIRE(is_exponent_critical(ab));
  REQUIRE(is_exponent_critical(cyclic_group(6)));
  REQUIRE(!is_exponent_critical(trivial_group()));
  REQUIRE(classify_pgroup(ab) == PGroupType::abelian);
  REQUIRE_THROWS_AS(find_p_witness(d16, 3), Error);
}

TEST_CASE("classification of small p-groups") {
  REQUIRE(classify_pgroup(dicyclic_group(8)) == PGroupType::typeB);
  REQUIRE(classify_pgroup(dihedral_group(8)) == PGroupType::typeB);
  REQUIRE(classify_pgroup(dihedral_group(32)) == PGroupType::typeA);
  REQUIRE(classify_pgroup(dicyclic_group(16)) == PGroupType::typeA);
  // Z2 x D8 has the D8 factor as a witness
  REQUIRE(classify_pgroup(direct_product(cyclic_group(2), dihedral_group(8))) == PGroupType::not_critical);
  REQUIRE_THROWS_AS(classify_pgroup(symmetric_group(3)), Error);
}

TEST_CASE("maximal-subgroup witness search agrees with a full proper-subgroup scan") {
  std::vector<FiniteGroup> corpus;
  for (std::size_t n = 6; n <= 36; n += 2) corpus.push_back(dihedral_group(n));
  for (std::size_t n = 8; n <= 32; n += 4) corpus.push_back(dicyclic_group(n));
  corpus.push_back(symmetric_group(4));
  corpus.push_back(alternating_group(4));
  corpus.push_back(direct_product(cyclic_group(3), symmetric_group(3)));
  corpus.push_back(direct_product(cyclic_group(2), dicyclic_group(8)));
  for (const auto& g : corpus) {
    auto rep = analyze(g);
    for (const auto& w : rep.witnesses) REQUIRE(w.found() == oracle::has_witness_bruteforce(g, w.prime));
  }
}

TEST_CASE("undecided for large non-p-groups") {
  auto saved = limits().lattice_order;
  limits().lattice_order = 20;
  try {
    analyze(symmetric_group(4));
    FAIL("expected undecided");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::undecided);
  }
  // p-groups use the hyperplane route regardless of the lattice cap
  REQUIRE(analyze(dihedral_group(32)).exponent_critical);
  limits().lattice_order = saved;
}

TEST_CASE("generator rank and generating pairs") {
  REQUIRE(generator_rank(dihedral_group(16)) == 2);
  REQUIRE(generator_rank(cyclic_group(8)) == 1);
  REQUIRE(generator_rank(direct_product(cyclic_group(2), dihedral_group(8))) == 3);
  auto d16 = dihedral_group(16);
  auto pr = max_order_generating_pair(d16);
  REQUIRE(pr.has_value());
  REQUIRE(d16.order_of(pr->first) == 8);
  REQUIRE(closure(d16, {pr->first, pr->second}).order() == 16);
}
