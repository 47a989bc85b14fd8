#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "expcrit/coset_enum.hpp"
#include "expcrit/group.hpp"
#include "expcrit/structure.hpp"

using namespace expcrit;

namespace {

void relators_hold(const Presentation& pres, const FiniteGroup& g) {
  for (const auto& r : pres.relators) REQUIRE(evaluate(g, r, g.generators()) == kIdentity);
}

}  // namespace

TEST_CASE("word helpers") {
  REQUIRE(free_reduce({1, -1, 2, 2, -2, 1}) == Word{2, 1});
  REQUIRE(word_inverse({1, 2, -1}) == Word{1, -2, -1});
  REQUIRE(word_commutator({1}, {2}) == Word{-1, -2, 1, 2});
  REQUIRE(word_power({1, 2}, -2) == Word{-2, -1, -2, -1});
  REQUIRE(word_iterated_commutator({1}, {2}, 0) == Word{1});
  REQUIRE(word_iterated_commutator({1}, {2}, 2) == word_commutator(word_commutator({1}, {2}), {2}));
}

TEST_CASE("presentation parser") {
  auto p = parse_presentation("< a, b | a^8, b^4, [a,b], [a; 2 b], a^4 = b^2, (a*b)^-2 >");
  REQUIRE(p.generators == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relators.size() == 6);
  REQUIRE(p.relators[0] == word_power({1}, 8));
  REQUIRE(p.relators[3] == word_iterated_commutator({1}, {2}, 2));
  REQUIRE(p.relators[4] == word_concat(word_power({1}, 4), word_power({2}, -2)));
  REQUIRE(p.relators[5] == word_power({1, 2}, -2));
  REQUIRE(parse_presentation("<a|>").relators.empty());
  REQUIRE(parse_presentation("< x, y | [x, y, x] >").relators[0] ==
          word_commutator(word_commutator({1}, {2}), {1}));
  for (const char* bad : {"< a | b >", "< a | a^ >", "a | a", "< a, a | a >", "< a | a^2 ] >"}) {
    try {
      parse_presentation(bad);
      FAIL(bad);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::parse_error);
    }
  }
}

TEST_CASE("Todd-Coxeter on small presentations") {
  auto c5 = parse_presentation("< a | a^5 >");
  auto t = todd_coxeter(c5);
  REQUIRE(t.num_cosets == 5);
  REQUIRE(t.complete());
  auto g = table_to_group(t);
  REQUIRE(g.order() == 5);
  REQUIRE(is_isomorphic(g, cyclic_group(5)));

  auto s3 = parse_presentation("< a, b | a^2, b^2, (a*b)^3 >");
  auto gs3 = presented_group(s3);
  REQUIRE(gs3.order() == 6);
  REQUIRE(is_isomorphic(gs3, symmetric_group(3)));
  relators_hold(s3, gs3);

  // index of a subgroup
  REQUIRE(todd_coxeter(s3, {{1}}).num_cosets == 3);

  auto q8 = parse_presentation("< a, b | a^4, a^2 = b^2, b^-1 a b = a^-1 >");
  auto gq8 = presented_group(q8);
  REQUIRE(is_isomorphic(gq8, dicyclic_group(8)));

  auto a5 = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >");
  REQUIRE(todd_coxeter(a5).num_cosets == 60);

  // the trivial group from a collapsing presentation
  REQUIRE(todd_coxeter(parse_presentation("< a, b | a^3, b^2, a*b = b*a^2, a^2 >")).num_cosets == 2);
}

TEST_CASE("enumeration does not depend on relator order") {
  auto pres = parse_presentation("< a, b | a^8, b^2, b^-1 a b = a^-1 >");
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(pres.relators.begin(), pres.relators.end(), rng);
    REQUIRE(todd_coxeter(pres).num_cosets == 16);
  }
}

TEST_CASE("coset cap") {
  auto inf = parse_presentation("< a, b | [a,b] >");
  try {
    todd_coxeter(inf, {}, 500);
    FAIL("expected cap-exceeded");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::cap_exceeded);
  }
}

TEST_CASE("incomplete tables are rejected") {
  CosetTable t;
  t.num_generators = 1;
  t.num_cosets = 2;
  t.table = {1, 1, -1, 0};
  REQUIRE_THROWS_AS(table_to_group(t), Error);
}

TEST_CASE("universal presentation") {
  auto p23 = u_presentation(2, 3);
  REQUIRE(p23.generators.size() == 2);
  auto has = [&](const Word& w) { return std::find(p23.relators.begin(), p23.relators.end(), w) != p23.relators.end(); };
  REQUIRE(has(word_power({1}, 8)));
  REQUIRE(has(word_power({2}, 4)));
  auto p32 = u_presentation(3, 2);
  Word a{1}, b{2};
  Word expect = word_iterated_commutator(a, b, 3);
  expect = word_concat(expect, word_power(word_iterated_commutator(a, b, 1), 3));
  expect = word_concat(expect, word_power(word_iterated_commutator(a, b, 2), 3));
  REQUIRE(std::find(p32.relators.begin(), p32.relators.end(), expect) != p32.relators.end());
  // p(p-1)/2 commuting relators, then the [a,_p b] relator and the power relators
  REQUIRE(p32.relators.size() == 3 + 1 + 1 + 2 + 1);
  REQUIRE(u_presentation(5, 2).relators.size() == 10 + 1 + 1 + 4 + 1);
  REQUIRE_THROWS_AS(u_presentation(2, 1), Error);

  REQUIRE(todd_coxeter(u_presentation(2, 2)).num_cosets == 16);
  REQUIRE(todd_coxeter(p23).num_cosets == 128);
  REQUIRE(todd_coxeter(p32).num_cosets == 243);
  auto g = presented_group(p23);
  relators_hold(p23, g);
}
