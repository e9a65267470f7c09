#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toeplitz/autgroup.hpp"
#include "toeplitz/blockmap.hpp"
#include "toeplitz/factor.hpp"
#include "toeplitz/substrate.hpp"

using namespace toeplitz;

static Subshift& fixture() {
  static Subshift X(Params::defaults());
  return X;
}

TEST_CASE("identity and shift application") {
  auto& X = fixture();
  auto y = X.point_window(0, 20);
  CHECK(apply_rule(X, identity_rule(X), y) == y);

  auto img = apply_rule(X, shift_rule(X, 1), y);
  CHECK(img.offset == 1);
  CHECK(img == PartialWindow{1, X.point_window(2, 20).cells});
  CHECK_THROWS_AS((void)apply_rule(X, shift_rule(X, 1), PartialWindow{0, "1"}),
                  Error);
}

TEST_CASE("unknown words are reported") {
  auto& X = fixture();
  Rule s = shift_rule(X, 1);
  try {
    (void)apply_to_word(s, "11111");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::UnknownWord);
  }
}

TEST_CASE("composition") {
  auto& X = fixture();
  Rule id = identity_rule(X);
  Rule s = shift_rule(X, 1);
  Rule s_inv = shift_rule(X, -1);
  CHECK(rules_equal(X, compose(X, id, s), s));
  Rule round = minimize(X, compose(X, s, s_inv));
  CHECK(round.radius == 0);
  CHECK(rules_equal(X, round, id));

  // associativity through application
  auto y = X.point_window(-30, 60);
  Rule f = sigma_rule(X, 1), g = shift_rule(X, 2);
  CHECK(apply_rule(X, compose(X, f, g), y) ==
        apply_rule(X, f, apply_rule(X, g, y)));
  // the shift commutes with every endomorphism
  CHECK(rules_equal(X, compose(X, s, f), compose(X, f, s)));
}

TEST_CASE("minimize and equality") {
  auto& X = fixture();
  Rule id = identity_rule(X);
  Rule padded = pad_rule(X, id, 2);
  CHECK(padded.radius == 2);
  CHECK(rules_equal(X, padded, id));  // distinct tables, same map
  Rule m = minimize(X, padded);
  CHECK(m.radius == 0);
  CHECK(rules_equal(X, minimize(X, m), m));  // idempotent
  CHECK(pure_shift_exponent(X, padded) == 0);
  CHECK(pure_shift_exponent(X, shift_rule(X, -2)) == -2);
  CHECK(!pure_shift_exponent(X, sigma_rule(X, 1)).has_value());
}

TEST_CASE("closure certificates") {
  auto& X = fixture();
  auto cert = certify_endomorphism(X, shift_rule(X, 1), 21);
  CHECK(cert.checked_depth == 21);
  CHECK(cert.induced == Phase{1, 5});

  Rule zero;
  zero.radius = 0;
  zero.table.emplace("0", kZero);
  zero.table.emplace("1", kZero);
  try {
    (void)certify_endomorphism(X, zero, 21);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::ClosureFailure);
    CHECK(!e.witness().empty());
  }
}

TEST_CASE("flip witness") {
  auto& X = fixture();
  std::string u = flip_witness(X);
  CHECK(u == "000");  // frozen: the language has no 111
  std::string flipped(u);
  for (char& c : flipped) c = flip_letter(c);
  CHECK(X.in_language((int)u.size(), u));
  CHECK(!X.in_language((int)u.size(), flipped));
  // minimality: every shorter word flips into the language
  for (int len = 1; len < (int)u.size(); ++len)
    for (const auto& v : X.language(len)) {
      std::string fv(v);
      for (char& c : fv) c = flip_letter(c);
      CHECK(X.in_language(len, fv));
    }
}

TEST_CASE("rule json round trip") {
  auto& X = fixture();
  Rule s1 = sigma_rule(X, 1);
  std::string j = rule_to_json(s1);
  Rule back = rule_from_json(j);
  CHECK(back.radius == s1.radius);
  CHECK(rules_equal(X, back, s1));
  CHECK(rule_to_json(back) == j);  // canonical: sorted keys
  CHECK_THROWS_AS((void)rule_from_json(R"({"radius":1,"table":{}})"), Error);
}
