#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "toeplitz/autgroup.hpp"
#include "toeplitz/endo_search.hpp"
#include "toeplitz/substrate.hpp"

using namespace toeplitz;

static Subshift& fixture() {
  static Subshift X(Params::defaults());
  return X;
}

TEST_CASE("radius zero finds only the identity") {
  auto& X = fixture();
  auto rules = enumerate_endomorphisms(X, 0, 30);
  REQUIRE(rules.size() == 1);
  CHECK(rules_equal(X, rules[0], identity_rule(X)));
}

TEST_CASE("radius one finds the shifts") {
  auto& X = fixture();
  auto rules = enumerate_endomorphisms(X, 1, 30);
  CHECK(rules.size() == 3);
  auto classified = classify(X, rules);
  std::set<std::string> values;
  for (const auto& c : classified) values.insert(c.value.str());
  CHECK(values == std::set<std::string>{"-1", "0", "1"});
}

TEST_CASE("radius two finds the half-integer elements") {
  auto& X = fixture();
  auto rules = enumerate_endomorphisms(X, 2, 30);
  CHECK(rules.size() == 9);
  auto classified = classify(X, rules);
  std::set<std::string> values;
  for (const auto& c : classified) {
    values.insert(c.value.str());
    CHECK(member(X.params(), c.value));
  }
  CHECK(values == std::set<std::string>{"-1", "-1/2", "-2", "-3/2", "0", "1/2",
                                        "1", "3/2", "2"});
  // a full survivor set is closed under negation: whenever the inverse of a
  // value fits the same radius, it must have been found too
  for (const auto& c : classified) {
    Rule inv = reconstruct(X, from_rational(X.params(), neg(c.value)));
    if (inv.radius <= 2) CHECK(values.count(neg(c.value).str()) == 1);
  }
}

TEST_CASE("survivors nest as the radius grows") {
  auto& X = fixture();
  auto r0 = enumerate_endomorphisms(X, 0, 30);
  auto r1 = enumerate_endomorphisms(X, 1, 30);
  auto r2 = enumerate_endomorphisms(X, 2, 30);
  auto contains = [&](const std::vector<Rule>& set, const Rule& f) {
    for (const auto& g : set)
      if (rules_equal(X, g, f)) return true;
    return false;
  };
  for (const auto& f : r0) CHECK(contains(r1, f));
  for (const auto& f : r1) CHECK(contains(r2, f));
}

TEST_CASE("survivor count matches the reconstructed radius census") {
  auto& X = fixture();
  // every group element whose canonical rule has radius <= 2 must be found
  std::set<std::string> small_values;
  for (i64 k0 = -2; k0 <= 2; ++k0)
    for (i64 k1 = -2; k1 <= 2; ++k1)
      for (i64 k2 = -1; k2 <= 1; ++k2) {
        CoeffVector c{{k0, k1, k2}};
        Rule f = reconstruct(X, c);
        if (f.radius <= 2)
          small_values.insert(to_rational(X.params(), c).str());
      }
  auto rules = enumerate_endomorphisms(X, 2, 30);
  CHECK(rules.size() == small_values.size());
}

TEST_CASE("classifying the shift alone") {
  auto& X = fixture();
  auto classified = classify(X, {shift_rule(X, 1)});
  REQUIRE(classified.size() == 1);
  CHECK(classified[0].value == Rational(1));
}

TEST_CASE("search preconditions") {
  auto& X = fixture();
  CHECK_THROWS_AS((void)enumerate_endomorphisms(X, 3, 40), Error);  // budget
  CHECK_THROWS_AS((void)enumerate_endomorphisms(X, 1, 4), Error);   // depth
}
