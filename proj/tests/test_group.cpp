#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "toeplitz/lifting_group.hpp"

using namespace toeplitz;

static const Params& P() {
  static Params p = Params::defaults();
  return p;
}

static CoeffVector cv(std::initializer_list<i64> k) {
  return CoeffVector{std::vector<i64>(k)};
}

TEST_CASE("to_rational on the generators") {
  CHECK(to_rational(P(), cv({1})) == Rational(1));
  CHECK(to_rational(P(), cv({0, 2})) == Rational(5));
  CHECK(to_rational(P(), cv({-2, 1})) == Rational(1, 2));
  CHECK(to_rational(P(), CoeffVector{}) == Rational(0));
}

TEST_CASE("balanced normal forms") {
  CHECK(from_rational(P(), Rational(5)) == cv({0, 2}));
  CHECK(from_rational(P(), Rational(3)) == cv({-2, 2}));
  CHECK(from_rational(P(), Rational(0)).k.empty());
  CHECK(from_rational(P(), Rational(1, 2)) == cv({-2, 1}));
  CHECK_THROWS_AS((void)from_rational(P(), Rational(1, 3)), Error);
  CHECK(from_rational(P(), Rational(5)).is_normal(P()));
  CHECK(!cv({1, 0}).is_normal(P()));
  CHECK(!cv({3}).is_normal(P()));
}

TEST_CASE("membership") {
  CHECK(member(P(), Rational(7, 4)));
  CHECK(!member(P(), Rational(1, 3)));
  CHECK(member(P(), Rational(-12)));
  CHECK(member(P(), Rational(0)));
}

TEST_CASE("residues match the 5-adic expansions") {
  CHECK(residue_mod(Rational(5, 2), 25) == 15);    // digits ...30
  CHECK(residue_mod(Rational(25, 4), 125) == 100); // digits ...400
  CHECK(residue_mod(Rational(1), 5) == 1);
  CHECK_THROWS_AS((void)residue_mod(Rational(1, 5), 25), Error);

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-40, 40), e(0, 5);
  for (int t = 0; t < 200; ++t) {
    Rational a(num(rng), i64{1} << e(rng)), b(num(rng), i64{1} << e(rng));
    i64 ra = residue_mod(a, 125), rb = residue_mod(b, 125);
    CHECK(residue_mod(add(a, b), 125) == (ra + rb) % 125);
  }
}

TEST_CASE("denominator exponents and the witness") {
  CHECK(denominator_exponent(P(), Rational(7, 4)) == 2);
  for (int i = 0; i <= 6; ++i)
    CHECK(denominator_exponent(P(), pow_pq(P(), i)) == i);
  CHECK(nonfg_witness(P(), {Rational(1), Rational(5, 2)}) == pow_pq(P(), 2));

  // ultrametric: the exponent of a sum never exceeds the max
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-50, 50), e(0, 6);
  for (int t = 0; t < 300; ++t) {
    Rational a(num(rng), i64{1} << e(rng)), b(num(rng), i64{1} << e(rng));
    CHECK(denominator_exponent(P(), add(a, b)) <=
          std::max(denominator_exponent(P(), a),
                   denominator_exponent(P(), b)));
  }
}

TEST_CASE("round trips") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> len_d(0, 7), digit_d(-2, 2), num(-99, 99),
      e(0, 6);
  for (int t = 0; t < 500; ++t) {
    CoeffVector c;
    int len = len_d(rng);
    for (int i = 0; i < len; ++i) c.k.push_back(digit_d(rng));
    while (!c.k.empty() && c.k.back() == 0) c.k.pop_back();
    CHECK(from_rational(P(), to_rational(P(), c)) == c);

    Rational x(num(rng), i64{1} << e(rng));
    CHECK(to_rational(P(), from_rational(P(), x)) == x);
  }
}

TEST_CASE("distinct small vectors give distinct rationals") {
  std::set<std::string> seen;
  i64 count = 1;
  seen.insert(to_rational(P(), CoeffVector{}).str());
  for (int len = 1; len <= 3; ++len) {
    std::vector<i64> k((size_t)len, -2);
    for (;;) {
      if (k.back() != 0) {
        ++count;
        seen.insert(to_rational(P(), CoeffVector{k}).str());
      }
      size_t i = 0;
      while (i < k.size() && ++k[i] > 2) k[i++] = -2;
      if (i == k.size()) break;
    }
  }
  CHECK((i64)seen.size() == count);
}

TEST_CASE("the lifting relation on generators") {
  // q * g_{t+1} = p * (k scaled down): moving a digit down a level
  for (int t = 0; t <= 3; ++t)
    for (i64 k = 1; k <= 2; ++k) {
      CoeffVector hi, lo;
      hi.k.assign((size_t)t + 2, 0);
      hi.k.back() = k;
      lo.k.assign((size_t)t + 1, 0);
      lo.k.back() = k * P().p;
      CHECK(mul(Rational(P().q), to_rational(P(), hi)) ==
            to_rational(P(), lo));
    }
}

TEST_CASE("parsing and printing") {
  CHECK(Rational::parse("5/2").str() == "5/2");
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(4, 2).str() == "2");
  CHECK_THROWS_AS((void)Rational::parse("x/y"), Error);
  CHECK(CoeffVector::parse("[-2,1]") == cv({-2, 1}));
  CHECK(cv({-2, 1}).str() == "[-2,1]");
  CHECK(CoeffVector::parse("[]").k.empty());
}
