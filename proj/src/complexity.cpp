#include "toeplitz/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "toeplitz/factor.hpp"

namespace toeplitz {

namespace {

// Holes of the shifted skeleton inside a window of length k at phase c.
i64 layer_length(const Params& P, i64 c, i64 k) {
  i64 cnt = (k / P.p) * P.q;
  for (i64 j = 0; j < k % P.p; ++j)
    cnt += (P.w[(size_t)((j + c) % P.p)] == kHole);
  return cnt;
}

// Exact factor count. A factor longer than the right radius has a unique
// phase, and for each phase its hole layer ranges over all factors of the
// layer length, so n(k) splits as a sum over phases. Base cases come from
// the stabilized window enumeration.
i64 exact_count(Subshift& X, i64 k, i64 base_cutoff,
                std::unordered_map<i64, i64>& memo) {
  if (k == 0) return 1;  // skeleton-only window: one word per phase
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  i64 n;
  if (k <= base_cutoff) {
    n = (i64)X.language((int)k).size();
  } else {
    n = 0;
    for (i64 c = 0; c < X.params().p; ++c)
      n += exact_count(X, layer_length(X.params(), c, k), base_cutoff, memo);
  }
  memo.emplace(k, n);
  return n;
}

}  // namespace

bool ComplexityProfile::has(i64 k) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), k,
      [](const std::pair<i64, i64>& e, i64 v) { return e.first < v; });
  return it != entries.end() && it->first == k;
}

i64 ComplexityProfile::at(i64 k) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), k,
      [](const std::pair<i64, i64>& e, i64 v) { return e.first < v; });
  if (it == entries.end() || it->first != k)
    fail(Err::MissingEntry, "profile has no entry for k = " + std::to_string(k));
  return it->second;
}

i64 count_factors(Subshift& X, i64 k) {
  if (k < 1) fail(Err::BadInput, "count_factors: k must be >= 1");
  i64 cutoff = std::max<i64>(right_radius(X), 1);
  std::unordered_map<i64, i64> memo;
  return exact_count(X, k, cutoff, memo);
}

ComplexityProfile complexity_profile(Subshift& X, i64 from, i64 to) {
  if (from < 1 || from > to) fail(Err::BadInput, "profile: bad range");
  i64 cutoff = std::max<i64>(right_radius(X), 1);
  std::unordered_map<i64, i64> memo;
  ComplexityProfile p;
  p.params = X.params();
  p.entries.reserve((size_t)(to - from + 1));
  for (i64 k = from; k <= to; ++k)
    p.entries.emplace_back(k, exact_count(X, k, cutoff, memo));
  return p;
}

RecurrenceReport recurrence_check(const ComplexityProfile& profile) {
  const Params& P = profile.params;
  RecurrenceReport out;
  for (const auto& [k, nk] : profile.entries) {
    i64 target = ceil_div(P.q * k, P.p) + 2 * P.p;
    if (target >= k) {
      out.vacuous.push_back(k);
      continue;
    }
    if (nk > P.p * profile.at(target)) {
      out.ok = false;
      out.failures.push_back(k);
    }
  }
  return out;
}

double exponent_fit(const ComplexityProfile& profile, i64 k_lo, i64 k_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  i64 n = 0;
  for (const auto& [k, nk] : profile.entries) {
    if (k < k_lo || k > k_hi) continue;
    double x = std::log((double)k), y = std::log((double)nk);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 8) fail(Err::BadInput, "exponent_fit: need at least 8 sample points");
  return ((double)n * sxy - sx * sy) / ((double)n * sxx - sx * sx);
}

std::string profile_to_csv(const ComplexityProfile& profile) {
  std::string out = "k,n_k\n";
  for (const auto& [k, nk] : profile.entries)
    out += std::to_string(k) + "," + std::to_string(nk) + "\n";
  return out;
}

}  // namespace toeplitz
