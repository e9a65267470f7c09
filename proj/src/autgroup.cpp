#include "toeplitz/autgroup.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

#include "toeplitz/factor.hpp"

namespace toeplitz {

namespace {

// Canonical key for memoization: radius plus the sorted table.
std::string rule_key(const Rule& f) {
  std::map<std::string_view, char> sorted(f.table.begin(), f.table.end());
  std::string key = std::to_string(f.radius) + "|";
  for (const auto& [word, out] : sorted) {
    key += word;
    key += out;
  }
  return key;
}

Rule unlift_build(Subshift& X, const Rule& f, int out_radius) {
  const Params& P = X.params();
  const int R = f.radius;
  const auto& words = X.language(2 * out_radius + 1);
  X.skeleton_period(1);  // populate before the parallel loop
  std::vector<char> out(words.size(), 0);
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 32)
  for (i64 wi = 0; wi < (i64)words.size(); ++wi) {
    try {
      const std::string& u = words[(size_t)wi];
      PartialWindow uw{-out_radius, u};
      i64 i = phase_of(X, uw, 1).value;
      char c = P.w[(size_t)i];
      if (c != kHole) {
        out[(size_t)wi] = c;  // skeleton cells pass through
        continue;
      }
      int t = P.hole_rank[(size_t)i];
      std::string y;
      y.reserve(2 * (size_t)R + 1);
      for (i64 m = t - R; m <= t + R; ++m) {
        i64 pos = X.hole_position(m) - i;
        if (pos < -out_radius || pos > out_radius)
          fail(Err::WindowArithmetic,
               "unlift: carrier cell outside the evaluation window");
        y += u[(size_t)(pos + out_radius)];
      }
      out[(size_t)wi] = f.lookup(y);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  Rule g;
  g.radius = out_radius;
  g.table.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) g.table.emplace(words[i], out[i]);
  return g;
}

}  // namespace

Rule unlift(Subshift& X, const Rule& f) {
  std::string key = rule_key(f);
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    auto it = X.rule_caches().unlift_memo.find(key);
    if (it != X.rule_caches().unlift_memo.end()) return it->second;
  }
  const Params& P = X.params();
  int out_radius = (int)ceil_div((i64)P.p * f.radius, P.q) + 3 * P.p;
  Rule g;
  try {
    g = minimize(X, unlift_build(X, f, out_radius));
  } catch (const Error& e) {
    if (e.kind() != Err::WindowArithmetic) throw;
    g = minimize(X, unlift_build(X, f, 2 * out_radius + P.p));
  }
  std::lock_guard<std::recursive_mutex> lock(X.mutex());
  return X.rule_caches().unlift_memo.emplace(key, std::move(g)).first->second;
}

std::pair<i64, Rule> lift(Subshift& X, const Rule& f) {
  std::string key = rule_key(f);
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    auto it = X.rule_caches().lift_memo.find(key);
    if (it != X.rule_caches().lift_memo.end()) return it->second;
  }
  const Params& P = X.params();
  const int R = f.radius;
  i64 c = induced_shift(X, f, 1).value;
  i64 k = mod_floor(-c, P.p);
  const int ell = (int)ceil_div((i64)P.q * (R + 3 * P.p), P.p);
  const i64 j_lo = P.anchor() + k - R;
  const i64 j_hi = P.anchor() + k + R;
  const auto& words = X.language(2 * ell + 1);
  std::vector<char> out(words.size(), 0);
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 32)
  for (i64 wi = 0; wi < (i64)words.size(); ++wi) {
    try {
      const std::string& u = words[(size_t)wi];
      std::string v;
      v.reserve(2 * (size_t)R + 1);
      for (i64 j = j_lo; j <= j_hi; ++j) {
        char s = P.w[(size_t)mod_floor(j, P.p)];
        if (s != kHole) {
          v += s;
          continue;
        }
        i64 m = X.hole_index(j);
        if (m < -ell || m > ell)
          fail(Err::WindowArithmetic,
               "lift: carrier index outside the evaluation window");
        v += u[(size_t)(m + ell)];
      }
      out[(size_t)wi] = f.lookup(v);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  Rule h;
  h.radius = ell;
  h.table.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) h.table.emplace(words[i], out[i]);
  h = minimize(X, h);
  // f must come back as unlift(h) after the shift by -k.
  Rule check = compose(X, unlift(X, h), shift_rule(X, -k));
  if (!rules_equal(X, f, check))
    fail(Err::RoundTripFailure,
         "lift: reconstruction disagrees with the input (k = " +
             std::to_string(k) + ", radius " + std::to_string(f.radius) +
             " -> " + std::to_string(h.radius) + "); not an endomorphism?");
  std::lock_guard<std::recursive_mutex> lock(X.mutex());
  return X.rule_caches()
      .lift_memo.emplace(key, std::make_pair(k, std::move(h)))
      .first->second;
}

const Rule& sigma_power(Subshift& X, int level, i64 exponent) {
  if (level < 0) fail(Err::BadInput, "sigma: level must be >= 0");
  if (level > X.sigma_budget)
    fail(Err::BudgetExceeded,
         "sigma: level " + std::to_string(level) + " above budget " +
             std::to_string(X.sigma_budget));
  if (std::llabs(exponent) > X.params().p)
    fail(Err::BudgetExceeded, "sigma: exponent above budget");
  std::pair<int, i64> cache_key{level, exponent};
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    auto it = X.rule_caches().sigma_pow.find(cache_key);
    if (it != X.rule_caches().sigma_pow.end()) return it->second;
  }
  Rule r = (level == 0) ? shift_rule(X, exponent)
                        : unlift(X, sigma_power(X, level - 1, exponent));
  std::lock_guard<std::recursive_mutex> lock(X.mutex());
  return X.rule_caches()
      .sigma_pow.emplace(cache_key, std::move(r))
      .first->second;
}

Decomposition decompose(Subshift& X, const Rule& f) {
  const Params& P = X.params();
  Decomposition d;
  Rule h = minimize(X, f);
  std::vector<Rule> history{h};
  for (int iter = 0; iter < 64; ++iter) {
    if (auto s = pure_shift_exponent(X, h)) {
      d.residual_shift = *s;
      d.residual_level = (int)d.level_shifts.size();
      Rational v(*s);
      for (int t = d.residual_level - 1; t >= 0; --t)
        v = add(Rational(d.level_shifts[(size_t)t]),
                mul(v, Rational(P.p, P.q)));
      d.value = v;
      d.normal = from_rational(P, v);
      if (!rules_equal(X, f, reconstruct(X, d.normal)))
        fail(Err::RoundTripFailure,
             "decompose: normal form " + d.normal.str() +
                 " does not reconstruct the input");
      return d;
    }
    auto [k, h2] = lift(X, h);
    d.level_shifts.push_back(-k);
    h = h2;
    for (const auto& prev : history)
      if (rules_equal(X, prev, h)) {
        std::string trace = "decompose: residual recurs without being a "
                            "shift; level shifts:";
        for (i64 ls : d.level_shifts) trace += " " + std::to_string(ls);
        trace += "; residual radius " + std::to_string(h.radius);
        fail(Err::NotInGroup, trace);
      }
    history.push_back(h);
  }
  fail(Err::IterationCap, "decompose: no shift residual after 64 lifts");
}

Rule reconstruct(Subshift& X, const CoeffVector& c) {
  Rule acc = identity_rule(X);
  for (size_t t = 0; t < c.k.size(); ++t) {
    if (c.k[t] == 0) continue;
    acc = minimize(X, compose(X, acc, sigma_power(X, (int)t, c.k[t])));
  }
  return acc;
}

std::string decomposition_to_json(const Decomposition& d) {
  nlohmann::ordered_json j;
  j["coeffs"] = d.level_shifts;
  j["value"] = d.value.str();
  j["residual_level"] = d.residual_level;
  j["residual_shift"] = d.residual_shift;
  j["normal_form"] = d.normal.k;
  return j.dump();
}

}  // namespace toeplitz
