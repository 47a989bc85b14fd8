#include <catch_amalgamated.hpp>

#include "expcrit/group.hpp"
#include "expcrit/structure.hpp"
#include "oracles.hpp"

using namespace expcrit;

namespace {

std::set<std::set<ElementId>> as_sets(const SubgroupLattice& lat) {
  std::set<std::set<ElementId>> out;
  for (const auto& h : lat.subgroups) out.insert({h.members.begin(), h.members.end()});
  return out;
}

std::vector<FiniteGroup> small_corpus() {
  std::vector<FiniteGroup> out;
  for (std::size_t n : {6, 8, 10, 12, 16, 18, 24}) out.push_back(dihedral_group(n));
  out.push_back(dicyclic_group(8));
  out.push_back(dicyclic_group(12));
  out.push_back(dicyclic_group(16));
  out.push_back(symmetric_group(4));
  out.push_back(alternating_group(4));
  out.push_back(cyclic_group(12));
  out.push_back(direct_product(cyclic_group(2), dihedral_group(8)));
  std::size_t m[] = {2, 2, 2};
  out.push_back(abelian_group(m));
  return out;
}

}  // namespace

TEST_CASE("lattice sizes") {
  REQUIRE(all_subgroups(cyclic_group(7)).subgroups.size() == 2);
  REQUIRE(all_subgroups(dicyclic_group(8)).subgroups.size() == 6);
  REQUIRE(all_subgroups(dihedral_group(8)).subgroups.size() == 10);
  REQUIRE(all_subgroups(symmetric_group(4)).subgroups.size() == 30);
  REQUIRE(all_subgroups(trivial_group()).subgroups.size() == 1);
}

TEST_CASE("lattice agrees with subgroups generated by up to three elements") {
  for (const auto& g : small_corpus()) {
    auto lat = all_subgroups(g);
    REQUIRE(as_sets(lat) == oracle::subgroups_by_triples(g));
    for (const auto& h : lat.subgroups) {
      REQUIRE(g.order() % h.order() == 0);
      REQUIRE(h.members == closure(g, h.generators).members);
      REQUIRE(h.contains(kIdentity));
    }
    REQUIRE(lat.subgroups.front().order() == 1);
    REQUIRE(lat.subgroups.back().order() == g.order());
  }
}

TEST_CASE("maximal subgroups") {
  auto d16 = dihedral_group(16);
  auto maxes = maximal_subgroups(d16);
  REQUIRE(maxes.size() == 3);
  int cyclic8 = 0, dihedral8 = 0;
  for (const auto& m : maxes) {
    REQUIRE(m.order() == 8);
    if (exponent(d16, m) == 8) ++cyclic8;
    if (!is_abelian(d16, m) && is_isomorphic(as_group(d16, m), dihedral_group(8))) ++dihedral8;
  }
  REQUIRE(cyclic8 == 1);
  REQUIRE(dihedral8 == 2);
  REQUIRE(maximal_subgroups(cyclic_group(27)).size() == 1);
  REQUIRE(maximal_subgroups(dihedral_group(4)).size() == 3);
  REQUIRE(maximal_subgroups(trivial_group()).empty());

  SECTION("hyperplane method matches the lattice filter for p-groups") {
    std::vector<FiniteGroup> pgroups{dihedral_group(16), dicyclic_group(16), dihedral_group(32),
                                     direct_product(cyclic_group(2), dihedral_group(8)),
                                     direct_product(cyclic_group(3), cyclic_group(9))};
    for (const auto& g : pgroups) {
      auto a = maximal_subgroups_pgroup(g);
      auto b = maximal_subgroups_from_lattice(all_subgroups(g));
      REQUIRE(a == b);
      for (const auto& m : a) REQUIRE(m.members == closure(g, m.generators).members);
    }
  }
  SECTION("lattice maximal flags agree with a containment scan") {
    for (const auto& g : small_corpus()) {
      auto lat = all_subgroups(g);
      for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
        bool maximal = lat.subgroups[i].order() < g.order();
        for (std::size_t j = 0; j < lat.subgroups.size() && maximal; ++j)
          if (lat.subgroups[j].order() > lat.subgroups[i].order() && lat.subgroups[j].order() < g.order() &&
              is_subset(lat.subgroups[i], lat.subgroups[j]))
            maximal = false;
        REQUIRE(static_cast<bool>(lat.maximal[i]) == maximal);
      }
    }
  }
}

TEST_CASE("characteristic subgroups") {
  std::size_t m[] = {2, 4};
  auto ab = abelian_group(m);
  REQUIRE(derived_subgroup(ab).order() == 1);
  REQUIRE(center(ab).order() == ab.order());
  auto q8 = dicyclic_group(8);
  REQUIRE(derived_subgroup(q8).order() == 2);
  REQUIRE(derived_subgroup(q8) == center(q8));
  auto d16 = dihedral_group(16);
  auto d = derived_subgroup(d16);
  REQUIRE(d.order() == 4);
  REQUIRE(exponent(d16, d) == 4);
  auto s4 = symmetric_group(4);
  REQUIRE(derived_subgroup(s4).order() == 12);
  REQUIRE(center(s4).order() == 1);
  auto c = closure(s4, {s4.generator(0)});
  REQUIRE(centralizer(s4, c).order() == 4);
  REQUIRE(normalizer(s4, c).order() == 4);
  // definitional scan for the derived subgroup of every small corpus group
  for (const auto& g : small_corpus()) {
    std::vector<ElementId> comms;
    for (ElementId x = 0; x < g.order(); ++x)
      for (ElementId y = 0; y < g.order(); ++y) comms.push_back(commutator(g, x, y));
    auto ref = oracle::generated(g, comms);
    auto got = derived_subgroup(g);
    REQUIRE(std::vector<ElementId>(ref.begin(), ref.end()) == got.members);
  }
}

TEST_CASE("Frattini subgroup") {
  REQUIRE(frattini(dihedral_group(4)).order() == 1);
  auto c8 = cyclic_group(8);
  REQUIRE(frattini(c8).order() == 4);
  auto q8 = dicyclic_group(8);
  REQUIRE(frattini(q8) == center(q8));
  for (const auto& g : small_corpus()) {
    auto p = pgroup_prime(g);
    if (!p) continue;
    REQUIRE(frattini(g) == frattini_pgroup(g, *p));
    auto lat_max = maximal_subgroups_from_lattice(all_subgroups(g));
    std::set<ElementId> inter(lat_max.front().members.begin(), lat_max.front().members.end());
    for (const auto& mx : lat_max) {
      std::set<ElementId> t;
      for (auto x : mx.members)
        if (inter.count(x)) t.insert(x);
      inter = t;
    }
    REQUIRE(std::vector<ElementId>(inter.begin(), inter.end()) == frattini(g).members);
  }
}

TEST_CASE("Sylow and Hall subgroups") {
  auto d16 = dihedral_group(16);
  REQUIRE(sylow_subgroup(d16, 2).order() == 16);
  auto a4 = alternating_group(4);
  auto v4 = sylow_subgroup(a4, 2);
  REQUIRE(v4.order() == 4);
  REQUIRE(exponent(a4, v4) == 2);
  REQUIRE_THROWS_AS(sylow_subgroup(a4, 5), Error);
  for (const auto& g : small_corpus())
    for (auto p : prime_divisors(g.order())) {
      auto s = sylow_subgroup(g, p);
      REQUIRE(s.order() == p_part(g.order(), p));
      REQUIRE(s.members == closure(g, s.generators).members);
    }
  auto ea = direct_product_embedded(cyclic_group(5), alternating_group(4));
  u64 both[] = {2, 3};
  auto h = hall_subgroup(ea.group, both);
  REQUIRE(h.has_value());
  REQUIRE(h->order() == 12);
  std::vector<ElementId> a4_image = ea.right;
  std::sort(a4_image.begin(), a4_image.end());
  REQUIRE(h->members == a4_image);
  u64 all[] = {2, 3, 5};
  REQUIRE(hall_subgroup(ea.group, all)->order() == 60);
  u64 two[] = {2};
  REQUIRE(hall_subgroup(ea.group, two)->order() == 4);
  // A5 has no subgroup of order 15
  u64 three_five[] = {3, 5};
  REQUIRE(!hall_subgroup(alternating_group(5), three_five).has_value());
}

TEST_CASE("quotients") {
  auto q8 = dicyclic_group(8);
  auto z = center(q8);
  auto qz = quotient_with_projection(q8, z);
  REQUIRE(qz.group.order() == 4);
  REQUIRE(is_isomorphic(qz.group, dihedral_group(4)));
  REQUIRE(qz.projection.kernel().size() == 2);
  auto s4 = symmetric_group(4);
  REQUIRE(is_isomorphic(quotient(s4, trivial_subgroup()), s4));
  REQUIRE(is_isomorphic(quotient(s4, derived_subgroup(s4)), cyclic_group(2)));
  auto c = closure(s4, {s4.generator(0)});
  try {
    quotient(s4, c);
    FAIL("expected not-normal");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::not_normal);
  }
}

TEST_CASE("isomorphism testing") {
  auto d8 = dihedral_group(8), q8 = dicyclic_group(8);
  REQUIRE(is_isomorphic(d8, d8));
  REQUIRE(!is_isomorphic(d8, q8));
  REQUIRE(!(fingerprint(d8) == fingerprint(q8)));
  auto s3 = symmetric_group(3);
  REQUIRE(is_isomorphic(s3, dihedral_group(6)));
  REQUIRE(is_isomorphic(dihedral_group(6), s3));
  REQUIRE(!is_isomorphic(cyclic_group(6), s3));
  REQUIRE(is_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)));
  auto corpus = small_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      REQUIRE(is_isomorphic(corpus[i], corpus[j]) == is_isomorphic(corpus[j], corpus[i]));
  // every found isomorphism is a bijective homomorphism
  for_each_isomorphism(d8, dihedral_group(8), [&](const std::vector<ElementId>& f) {
    for (ElementId x = 0; x < 8; ++x)
      for (ElementId y = 0; y < 8; ++y) REQUIRE(f[d8.mul(x, y)] == d8.mul(f[x], f[y]));
    return false;
  });
  std::size_t autos = 0;
  for_each_isomorphism(d8, d8, [&](const std::vector<ElementId>&) { return ++autos, false; });
  REQUIRE(autos == 8);
  std::size_t q8_autos = 0;
  for_each_isomorphism(q8, q8, [&](const std::vector<ElementId>&) { return ++q8_autos, false; });
  REQUIRE(q8_autos == 24);
}

TEST_CASE("special and minimal non-abelian predicates") {
  std::size_t m[] = {3, 3};
  REQUIRE(is_special(abelian_group(m)));
  REQUIRE(!is_special(cyclic_group(9)));
  REQUIRE(is_special(dicyclic_group(8)));
  REQUIRE(is_special(dihedral_group(8)));
  REQUIRE(!is_special(dihedral_group(16)));
  REQUIRE_THROWS_AS(is_special(symmetric_group(3)), Error);
  REQUIRE(!is_minimal_nonabelian(cyclic_group(6)));
  REQUIRE(is_minimal_nonabelian(dicyclic_group(8)));
  REQUIRE(is_minimal_nonabelian(symmetric_group(3)));
  REQUIRE(is_minimal_nonabelian(alternating_group(4)));
  REQUIRE(!is_minimal_nonabelian(symmetric_group(4)));
  REQUIRE(!is_minimal_nonabelian(dihedral_group(12)));
}

TEST_CASE("groups with an abelian maximal subgroup are solvable") {
  for (const auto& g : small_corpus()) {
    bool has_abelian_max = false;
    for (const auto& mx : maximal_subgroups(g)) has_abelian_max |= is_abelian(g, mx);
    if (has_abelian_max) REQUIRE(is_solvable(g));
  }
  REQUIRE(!is_solvable(alternating_group(5)));
  REQUIRE(derived_length(symmetric_group(4)) == 3);
}
