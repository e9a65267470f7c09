#include "toeplitz/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "toeplitz/autgroup.hpp"
#include "toeplitz/blockmap.hpp"
#include "toeplitz/complexity.hpp"
#include "toeplitz/endo_search.hpp"
#include "toeplitz/factor.hpp"
#include "toeplitz/lifting_group.hpp"

namespace toeplitz {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail: " << what << "] ";
    }
  }
};

CriterionResult essential_periods_criterion(Subshift& X) {
  Check c;
  auto got = X.essential_periods(130);
  std::vector<i64> want{1, 5, 25, 125};
  c.require(got == want, "essential periods differ");
  c.detail << "essential_periods(130) = {";
  for (size_t i = 0; i < got.size(); ++i) c.detail << (i ? "," : "") << got[i];
  c.detail << "}";
  return {"essential-periods", c.pass, c.detail.str()};
}

CriterionResult gap_bound_criterion(Subshift& X) {
  Check c;
  c.detail << "min hole gaps:";
  for (int j = 1; j <= 10; ++j) {
    i64 g = X.hole_gap_min(j);
    c.detail << " " << g;
    c.require(g >= (i64{1} << j), "gap(" + std::to_string(j) + ") below 2^j");
  }
  return {"gap-bound", c.pass, c.detail.str()};
}

CriterionResult lifting_relation_criterion(Subshift& X) {
  Check c;
  Rule s1_sq = compose_power(X, sigma_rule(X, 1), 2);
  Rule s0_p5 = compose_power(X, sigma_rule(X, 0), 5);
  c.require(rules_equal(X, s1_sq, s0_p5), "sigma_1^2 != sigma_0^5");
  Rule s2_sq = compose_power(X, sigma_rule(X, 2), 2);
  Rule s1_p5 = compose_power(X, sigma_rule(X, 1), 5);
  c.require(rules_equal(X, s2_sq, s1_p5), "sigma_2^2 != sigma_1^5");
  c.detail << "q*g_{j+1} = p*g_j holds for j = 0, 1";
  return {"lifting-relation", c.pass, c.detail.str()};
}

CriterionResult commutativity_criterion(Subshift& X) {
  Check c;
  for (int i = 0; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      Rule ij = compose(X, sigma_rule(X, i), sigma_rule(X, j));
      Rule ji = compose(X, sigma_rule(X, j), sigma_rule(X, i));
      c.require(rules_equal(X, ij, ji),
                "sigma_" + std::to_string(i) + " and sigma_" +
                    std::to_string(j) + " do not commute");
    }
  c.detail << "all pairs 0 <= i < j <= 3 commute";
  return {"commutativity", c.pass, c.detail.str()};
}

CriterionResult decompose_roundtrip_criterion(Subshift& X) {
  Check c;
  const Params& P = X.params();
  int cases = 0;
  for (i64 k0 = -2; k0 <= 2 && c.pass; ++k0)
    for (i64 k1 = -2; k1 <= 2 && c.pass; ++k1)
      for (i64 k2 = -2; k2 <= 2 && c.pass; ++k2) {
        CoeffVector cv{{k0, k1, k2}};
        Rational want = to_rational(P, cv);
        Rule f = reconstruct(X, cv);
        Decomposition d = decompose(X, f);
        c.require(d.value == want, "value mismatch at " + cv.str() + ": got " +
                                       d.value.str() + ", want " + want.str());
        ++cases;
      }
  c.detail << cases << "/125 coefficient vectors round-trip exactly";
  return {"decompose-roundtrip", c.pass, c.detail.str()};
}

std::string base_digits(i64 v, int base, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    out = char('0' + (v % base)) + out;
    v /= base;
  }
  return out;
}

CriterionResult padic_crosscheck_criterion(Subshift& X) {
  Check c;
  const Params& P = X.params();
  i64 c1 = induced_shift(X, sigma_rule(X, 1), 2).value;
  i64 c2 = induced_shift(X, sigma_rule(X, 2), 3).value;
  c.require(c1 == 15, "induced shift of sigma_1 mod 25 is not 15");
  c.require(c2 == 100, "induced shift of sigma_2 mod 125 is not 100");
  c.require(residue_mod(pow_pq(P, 1), 25) == c1, "residue(5/2, 25) mismatch");
  c.require(residue_mod(pow_pq(P, 2), 125) == c2, "residue(25/4, 125) mismatch");
  c.detail << "sigma_1 -> " << c1 << " mod 25 (digits " << base_digits(c1, 5, 2)
           << "), sigma_2 -> " << c2 << " mod 125 (digits "
           << base_digits(c2, 5, 3) << ")";
  return {"padic-crosscheck", c.pass, c.detail.str()};
}

CriterionResult normal_form_criterion(Subshift& X) {
  Check c;
  const Params& P = X.params();
  // Exhaustive: every vector of at most 4 balanced digits.
  std::set<std::string> values;
  i64 vectors = 1;  // the empty vector (zero)
  values.insert(to_rational(P, CoeffVector{}).str());
  std::vector<CoeffVector> all;
  for (int len = 1; len <= 4; ++len) {
    std::vector<i64> k(len, -P.p_prime);
    for (;;) {
      if (k.back() != 0) {
        CoeffVector cv{k};
        ++vectors;
        values.insert(to_rational(P, cv).str());
      }
      int i = 0;
      while (i < len && ++k[(size_t)i] > P.p_prime) k[(size_t)i++] = -P.p_prime;
      if (i == len) break;
    }
  }
  c.require((i64)values.size() == vectors,
            "distinct vectors collide: " + std::to_string(values.size()) +
                " values for " + std::to_string(vectors) + " vectors");
  // Randomized round trips on normal-form vectors.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len_d(0, 8), digit_d(-P.p_prime, P.p_prime);
  int trips = 0;
  for (int t = 0; t < 1000; ++t) {
    CoeffVector cv;
    int len = len_d(rng);
    for (int i = 0; i < len; ++i) cv.k.push_back(digit_d(rng));
    while (!cv.k.empty() && cv.k.back() == 0) cv.k.pop_back();
    CoeffVector back = from_rational(P, to_rational(P, cv));
    c.require(back == cv, "round trip failed at " + cv.str());
    ++trips;
  }
  c.detail << vectors << " exhaustive vectors distinct; " << trips
           << " random round trips exact";
  return {"normal-form-uniqueness", c.pass, c.detail.str()};
}

CriterionResult nonfg_criterion(Subshift& X) {
  Check c;
  const Params& P = X.params();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> size_d(1, 8), len_d(0, 6),
      digit_d(-P.p_prime, P.p_prime);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> sample;
    int sz = size_d(rng);
    for (int s = 0; s < sz; ++s) {
      CoeffVector cv;
      int len = len_d(rng);
      for (int i = 0; i < len; ++i) cv.k.push_back(digit_d(rng));
      sample.push_back(to_rational(P, cv));
    }
    Rational w = nonfg_witness(P, sample);
    c.require(member(P, w), "witness not a group element");
    int we = denominator_exponent(P, w);
    for (const auto& x : sample)
      c.require(denominator_exponent(P, x) < we,
                "witness exponent does not exceed sample");
  }
  c.detail << "50 random samples; witness exponent strictly dominates";
  return {"nonfg-witness", c.pass, c.detail.str()};
}

CriterionResult complexity_criterion(Subshift& X) {
  Check c;
  auto profile = complexity_profile(X, 1, 2000);
  auto rec = recurrence_check(profile);
  c.require(rec.ok && rec.failures.empty(), "recurrence fails");
  double C = 0;
  const double alpha = 1.7565;
  for (i64 k = 10; k <= 100; ++k)
    C = std::max(C, (double)profile.at(k) / std::pow((double)k, alpha));
  // Power-law bound from k = 2 on; k = 1 is the alphabet-size degeneracy
  // (n(1) = 2 exceeds any constant calibrated against k^alpha at k = 1).
  bool bound_ok = true;
  for (const auto& [k, nk] : profile.entries)
    if (k >= 2 && (double)nk > 1.1 * C * std::pow((double)k, alpha))
      bound_ok = false;
  c.require(bound_ok, "subquadratic bound fails");
  double slope = exponent_fit(profile, 100, 2000);
  c.require(slope <= 1.80, "fitted exponent above 1.80");
  c.detail << "recurrence ok for "
           << profile.entries.size() - rec.vacuous.size()
           << " applicable k; bound on k in [2,2000] with C = " << C
           << "; fitted exponent = " << slope << " (ceiling log_{5/2} 5 = "
           << std::log(5.0) / std::log(2.5) << ")";
  return {"complexity", c.pass, c.detail.str()};
}

CriterionResult endo_oracle_criterion(Subshift& X) {
  Check c;
  auto r0 = enumerate_endomorphisms(X, 0, 40);
  c.require(r0.size() == 1, "radius-0 search must find exactly one rule");
  if (r0.size() == 1)
    c.require(rules_equal(X, r0[0], identity_rule(X)),
              "radius-0 survivor is not the identity");
  c.detail << "survivors:";
  for (int R = 0; R <= 2; ++R) {
    auto rules = enumerate_endomorphisms(X, R, 40);
    auto classified = classify(X, rules);  // throws if not injective
    c.detail << " R=" << R << ":" << rules.size() << " {";
    for (size_t i = 0; i < classified.size(); ++i)
      c.detail << (i ? "," : "") << classified[i].value.str();
    c.detail << "}";
  }
  return {"endo-oracle", c.pass, c.detail.str()};
}

CriterionResult symbol_map_criterion(Subshift& X) {
  Check c;
  std::string u = flip_witness(X, 200);
  std::string flipped(u);
  for (char& ch : flipped) ch = flip_letter(ch);
  c.require(X.in_language((int)u.size(), u), "witness not in the language");
  c.require(!X.in_language((int)u.size(), flipped),
            "flipped witness still in the language");
  c.detail << "witness '" << u << "' (length " << u.size() << ")";
  return {"symbol-map-witness", c.pass, c.detail.str()};
}

CriterionResult homeomorphism_criterion(Subshift& X) {
  Check c;
  int done = 0;
  for (int t = 0; t < 100; ++t) {
    i64 a = -237 + 13 * t;
    i64 b = a + 40 + (t % 17);
    PartialWindow z = X.point_window(a, b);
    PartialWindow y = X.psi_w(z);
    Phase ph = phase_of(X, y, 1);
    c.require(ph.value == 0, "psi_w image has nonzero phase");
    c.require(X.psi_w_inverse(y) == z, "psi_w round trip not the identity");
    ++done;
  }
  c.detail << done << " windows: phase(psi_w(z)) = 0 and exact round trip";
  return {"homeomorphism", c.pass, c.detail.str()};
}

}  // namespace

std::vector<std::string> criterion_names() {
  return {"essential-periods",     "gap-bound",
          "lifting-relation",      "commutativity",
          "decompose-roundtrip",   "padic-crosscheck",
          "normal-form-uniqueness", "nonfg-witness",
          "complexity",            "endo-oracle",
          "symbol-map-witness",    "homeomorphism"};
}

CriterionResult run_criterion(Subshift& X, const std::string& name) {
  auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  double budget = 0;  // seconds; 0 = no stated budget
  if (name == "essential-periods") r = essential_periods_criterion(X), budget = 10;
  else if (name == "gap-bound") r = gap_bound_criterion(X), budget = 10;
  else if (name == "lifting-relation") r = lifting_relation_criterion(X), budget = 60;
  else if (name == "commutativity") r = commutativity_criterion(X);
  else if (name == "decompose-roundtrip") r = decompose_roundtrip_criterion(X), budget = 300;
  else if (name == "padic-crosscheck") r = padic_crosscheck_criterion(X);
  else if (name == "normal-form-uniqueness") r = normal_form_criterion(X);
  else if (name == "nonfg-witness") r = nonfg_criterion(X);
  else if (name == "complexity") r = complexity_criterion(X), budget = 300;
  else if (name == "endo-oracle") r = endo_oracle_criterion(X), budget = 900;
  else if (name == "symbol-map-witness") r = symbol_map_criterion(X);
  else if (name == "homeomorphism") r = homeomorphism_criterion(X);
  else fail(Err::BadInput, "unknown criterion '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  if (budget > 0 && r.seconds >= budget) {
    r.pass = false;
    r.detail += " [over the " + std::to_string((int)budget) + "s budget]";
  }
  return r;
}

std::vector<CriterionResult> run_all_criteria(
    Subshift& X,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& name : criterion_names()) {
    CriterionResult r;
    try {
      r = run_criterion(X, name);
    } catch (const std::exception& e) {
      r.name = name;
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace toeplitz
