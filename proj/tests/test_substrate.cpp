#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "toeplitz/reference.hpp"
#include "toeplitz/substrate.hpp"

using namespace toeplitz;

static Subshift& fixture() {
  static Subshift X(Params::defaults());
  return X;
}

TEST_CASE("params validation") {
  CHECK(Params::violations(5, 2, 2, "1_0_0").empty());
  CHECK(!Params::violations(5, 2, 2, "1_0_0_").empty());  // length != p
  CHECK(!Params::violations(5, 2, 2, "__100").empty());   // leading hole
  CHECK(!Params::violations(6, 2, 2, "1_0_00").empty());  // p not prime, parity
  CHECK(!Params::violations(5, 2, 1, "1___0").empty());   // q too small
  CHECK_THROWS_AS((void)Params::make(5, 2, 2, "10000"), Error);  // no holes
  // other valid seeds
  CHECK(Params::violations(7, 3, 2, "1_0_000").empty());
  CHECK(Params::violations(7, 3, 3, "1_0_0_0").empty());
}

TEST_CASE("occurrences") {
  CHECK(occurrences("00", "1000") == 2);
  CHECK(occurrences("1_0", "1_0_0") == 1);
  CHECK(occurrences("x", "") == 0);
  CHECK(occurrences("0", "000") == 3);
}

TEST_CASE("fill basic") {
  PartialWindow y{0, "1_0_0"};
  PartialWindow z{0, "01"};
  CHECK(fill(y, z).cells == "10010");

  // negative-side holes read the sequence at negative indices
  PartialWindow yn{-5, "1_0_01_0_0"};
  PartialWindow zn{-2, "0011"};
  CHECK(fill(yn, zn).cells == "1000011010");

  PartialWindow full{0, "10101"};
  CHECK_THROWS_AS((void)fill(full, z), Error);
  CHECK(fill(full, z, true) == full);
  CHECK_THROWS_AS((void)fill(y, PartialWindow{0, "0"}), Error);  // too short

  // holes only at negative indices: still no anchor
  PartialWindow neg{-4, "1_01"};
  CHECK_THROWS_AS((void)fill(neg, z, true), Error);
}

TEST_CASE("fill with the periodic seed reproduces the second level") {
  PartialWindow y{0, "1_0_01_0_0"};
  CHECK(fill_periodic(y, "1_0_0").cells == "110_0100_0");
}

TEST_CASE("generate matches the frozen examples") {
  auto& X = fixture();
  CHECK(X.generate(1, 0, 9).cells == "1_0_01_0_0");
  CHECK(X.generate(2, 0, 9).cells == "110_0100_0");
  CHECK(X.skeleton(1, 0, 4).cells == "1_0_0");
  CHECK(X.skeleton(0, 0, 0).cells == "1");
  CHECK(X.skeleton(2, 0, 9) == X.generate(2, 0, 9));
}

TEST_CASE("kernel equals the padded iterative reference") {
  auto& X = fixture();
  for (int depth = 1; depth <= 5; ++depth)
    CHECK(X.generate(depth, -50, 200) ==
          reference_generate(X.params(), depth, -50, 200));
  auto ref = reference_generate(X.params(), 8, -5, -1);
  REQUIRE(ref.hole_free());
  CHECK(X.point_window(-5, -1) == ref);
}

TEST_CASE("levels are periodic with nested holes") {
  auto& X = fixture();
  const i64 p = X.params().p;
  for (int j = 1; j <= 4; ++j) {
    i64 period = 1;
    for (int t = 0; t < j; ++t) period *= p;
    auto win = X.generate(j, 0, 2 * period - 1);
    for (i64 i = 0; i < period; ++i) CHECK(win.at(i) == win.at(i + period));
    // hole count per period is q^j
    i64 holes = 0;
    for (i64 i = 0; i < period; ++i) holes += (win.at(i) == kHole);
    i64 want = 1;
    for (int t = 0; t < j; ++t) want *= X.params().q;
    CHECK(holes == want);
    // holes of level j+1 are holes of level j
    auto next = X.generate(j + 1, 0, 2 * period - 1);
    for (i64 i = 0; i < 2 * period; ++i)
      if (next.at(i) == kHole) CHECK(win.at(i) == kHole);
  }
}

TEST_CASE("point window is the limit of the levels") {
  auto& X = fixture();
  CHECK(X.point_window(0, 0).cells == "1");
  auto pw = X.point_window(-100, 300);
  for (int j = 1; j <= 6; ++j) {
    auto win = X.generate(j, -100, 300);
    for (i64 i = -100; i <= 300; ++i)
      if (win.at(i) != kHole) CHECK(win.at(i) == pw.at(i));
  }
}

TEST_CASE("alternating the two fill orders reaches the same limit") {
  auto& X = fixture();
  const std::string& w = X.params().w;
  const i64 M = 2000;
  PartialWindow wz{-M, std::string(2 * M + 1, kHole)};
  for (i64 i = -M; i <= M; ++i)
    wz.at(i) = w[(size_t)mod_floor(i, X.params().p)];

  auto step = [&](PartialWindow cur, int order) {
    return order == 0 ? fill_periodic(cur, w, true) : fill(wz, cur, true);
  };
  PartialWindow blank{-M, std::string(2 * M + 1, kHole)};
  std::vector<std::vector<int>> orders = {
      {0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, 1},
      {0, 1, 0, 1, 0, 1, 0, 1}, {1, 0, 0, 1, 1, 0, 0, 1}};
  auto want = X.point_window(-20, 20);
  for (const auto& order : orders) {
    PartialWindow cur = blank;
    for (int o : order) cur = step(cur, o);
    for (i64 i = -20; i <= 20; ++i)
      if (cur.at(i) != kHole) CHECK(cur.at(i) == want.at(i));
    // after eight rounds the center must be fully determined
    for (i64 i = -20; i <= 20; ++i) CHECK(cur.at(i) != kHole);
  }
}

TEST_CASE("lazy periods") {
  CHECK(lazy_period_check("01____", 2));
  CHECK(lazy_period_check("01____", 3));
  CHECK(!lazy_period_check("01____", 1));
  CHECK(least_lazy_period("1_0_0") == 5);
  CHECK(least_lazy_period("____") == 1);

  // a word with plain period a and lazy period b has lazy period gcd(a, b)
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len_d(4, 12), cell_d(0, 2);
  for (int t = 0; t < 300; ++t) {
    int a = len_d(rng);
    std::string u;
    for (int i = 0; i < a; ++i)
      u += cell_d(rng) == 2 ? kHole : char('0' + cell_d(rng) % 2);
    for (i64 b = 1; b <= 3 * a; ++b)
      if (lazy_period_check(u, b))
        CHECK(lazy_period_check(u, std::gcd((i64)a, b)));
  }
}

TEST_CASE("essential periods are the powers of p") {
  auto& X = fixture();
  CHECK(X.essential_periods(130) == std::vector<i64>{1, 5, 25, 125});
  // 10 is not essential: the level-1 skeleton word is fixed by rotation by 5
  auto W = X.generate(1, 0, 9).cells;
  bool fixed = true;
  for (int i = 0; i < 10; ++i) fixed = fixed && W[(i + 5) % 10] == W[i];
  CHECK(fixed);

  Subshift X7(Params::make(7, 3, 2, "1_0_000"));
  CHECK(X7.essential_periods(50) == std::vector<i64>{1, 7, 49});
}

TEST_CASE("hole gaps grow as 2^depth") {
  auto& X = fixture();
  CHECK(X.hole_gap_min(1) == 2);
  CHECK(X.hole_gap_min(3) >= 8);
  for (int j = 1; j <= 8; ++j) CHECK(X.hole_gap_min(j) >= (i64{1} << j));
  CHECK_THROWS_AS((void)X.hole_gap_min(0), Error);
}

TEST_CASE("language enumeration against a naive set oracle") {
  auto& X = fixture();
  CHECK(X.language(1) == std::vector<std::string>{"0", "1"});
  const auto& l2 = X.language(2);
  CHECK(std::binary_search(l2.begin(), l2.end(), "11"));
  CHECK(std::binary_search(l2.begin(), l2.end(), "00"));

  for (int len : {1, 2, 3, 5, 8, 10}) {
    std::set<std::string> naive;
    std::string_view s = X.point_prefix(16384);
    for (size_t i = 0; i + len <= s.size(); ++i)
      naive.insert(std::string(s.substr(i, (size_t)len)));
    std::vector<std::string> sorted(naive.begin(), naive.end());
    CHECK(X.language(len) == sorted);
  }
  // counts from the suffix-array path agree with the word lists
  auto counts = X.factor_counts(12);
  for (int len = 1; len <= 12; ++len)
    CHECK(counts.n[(size_t)len] == (i64)X.language(len).size());
}

TEST_CASE("frozen factor counts") {
  auto& X = fixture();
  auto counts = X.factor_counts(10);
  std::vector<i64> want{0, 2, 4, 7, 13, 20, 26, 32, 41, 53, 65};
  CHECK(counts.n == want);
}

TEST_CASE("carrier maps round trip") {
  auto& X = fixture();
  for (i64 n : {-7, -2, 0, 1, 5, 12}) {
    CHECK(X.hole_index(X.hole_position(n)) == n);
    CHECK(X.is_hole_position(X.hole_position(n)));
  }
  CHECK(X.hole_position(0) == 1);  // anchor hole of the seed

  auto z = X.point_window(3, 40);
  auto y = X.psi_w(z);
  CHECK(X.psi_w_inverse(y) == z);
  // output length within the q/p density bounds
  i64 n = z.size();
  CHECK(y.size() >= n * X.params().p / X.params().q - X.params().p);
  CHECK(y.size() <= (n * X.params().p + X.params().q - 1) / X.params().q +
                        X.params().p);

  // a window off the phase-0 skeleton is rejected
  PartialWindow bad{y.lo() + 1, y.cells};
  CHECK_THROWS_AS((void)X.psi_w_inverse(bad), Error);
}

TEST_CASE("window text and json round trips") {
  PartialWindow w{-3, "1_0_01"};
  CHECK(PartialWindow::from_text(w.to_text()) == w);
  CHECK(PartialWindow::from_json(w.to_json()) == w);
  CHECK(w.to_json() == R"({"offset":-3,"cells":"1_0_01"})");
  CHECK_THROWS_AS((void)PartialWindow::from_text("bogus"), Error);
}

TEST_CASE("another seed: p = 7") {
  Subshift X(Params::make(7, 3, 2, "1_0_000"));
  auto w1 = X.generate(1, 0, 13);
  CHECK(w1.cells == "1_0_0001_0_000");
  for (int j = 1; j <= 4; ++j)
    CHECK(X.generate(j, 0, 100) ==
          reference_generate(X.params(), j, 0, 100));
  for (int j = 1; j <= 6; ++j) CHECK(X.hole_gap_min(j) >= (i64{1} << j));
}
