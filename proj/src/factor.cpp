#include "toeplitz/factor.hpp"

#include <algorithm>
#include <map>

namespace toeplitz {

namespace {

i64 start_window(int p, i64 len) {
  i64 pw = 1;
  while (pw < len) pw *= p;
  return std::max<i64>(4 * pw, 4096);
}

// word -> bitmask of occurrence residues mod p over x_[0, n).
std::map<std::string, uint64_t> residue_masks(Subshift& X, int len, i64 n) {
  std::map<std::string, uint64_t> out;
  std::string_view s = X.point_prefix(n);
  int p = X.params().p;
  for (i64 i = 0; i + len <= (i64)s.size(); ++i)
    out[std::string(s.substr((size_t)i, (size_t)len))] |=
        uint64_t{1} << (i % p);
  return out;
}

}  // namespace

int right_radius(Subshift& X) {
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    if (X.rule_caches().right_radius) return *X.rule_caches().right_radius;
  }
  if (X.params().p > 63) fail(Err::BadInput, "right_radius: p too large");
  for (int len = 1; len <= 200; ++len) {
    i64 n = start_window(X.params().p, len);
    auto prev = residue_masks(X, len, n);
    while (true) {
      if ((i64)X.params().p * n > X.window_budget)
        fail(Err::Unstable, "right_radius: occurrence map did not stabilize");
      n *= X.params().p;
      auto cur = residue_masks(X, len, n);
      if (cur == prev) break;
      prev = std::move(cur);
    }
    bool all_single = true;
    for (const auto& [word, mask] : prev)
      if ((mask & (mask - 1)) != 0) {
        all_single = false;
        break;
      }
    if (all_single) {
      std::lock_guard<std::recursive_mutex> lock(X.mutex());
      X.rule_caches().right_radius = len - 1;
      return len - 1;
    }
  }
  fail(Err::NotFound, "right_radius: no single-phase length below cap");
}

Phase phase_of(Subshift& X, const PartialWindow& y, int level) {
  if (!y.hole_free()) fail(Err::BadInput, "phase: window must be hole-free");
  if (level < 0) fail(Err::BadInput, "phase: level must be >= 0");
  if (level == 0) return {0, 1};
  const i64 M = checked_power(X.params().p, level);
  const std::string& sk = X.skeleton_period(level);
  i64 found = -1;
  int hits = 0;
  for (i64 c = 0; c < M; ++c) {
    bool ok = true;
    for (i64 j = y.lo(); j <= y.hi(); ++j) {
      char s = sk[(size_t)mod_floor(j + c, M)];
      if (s != kHole && s != y.at(j)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      found = c;
      if (++hits > 1) break;
    }
  }
  if (hits == 1) return {found, M};
  if (hits == 0)
    fail(Err::PhaseMismatch,
         "phase: window consistent with no alignment at level " +
             std::to_string(level));
  fail(Err::WindowTooShort,
       "phase: window of length " + std::to_string(y.size()) +
           " is ambiguous at level " + std::to_string(level) +
           "; supply length >= " + std::to_string(2 * y.size() + M));
}

DetectionConstant detection_constant(Subshift& X, i64 k, i64 m_cap) {
  if (k < 1) fail(Err::BadInput, "detection_constant: k must be >= 1");
  int level = 0;
  for (i64 t = k; t > 1; t /= X.params().p, ++level)
    if (t % X.params().p != 0)
      fail(Err::BadInput, "detection_constant: k must be an essential period");
  if (m_cap <= 0) m_cap = 64 * k;
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    auto it = X.rule_caches().detection.find(k);
    if (it != X.rule_caches().detection.end())
      return {it->second.first, it->second.second};
  }

  // Longest run of equal symbols spaced k apart starting at j, capped.
  auto run_at = [&](i64 j) -> i64 {
    char c = X.eval_cell(j).value;
    i64 t = 1;
    while (t < m_cap + 1 && X.eval_cell(j + t * k).value == c) ++t;
    return t;
  };

  auto m_over = [&](i64 n) -> i64 {
    i64 worst = 0;
    for (i64 j = 0; j < n; ++j) {
      if (X.fill_depth_capped(j, level) <= level) continue;  // skeleton cell
      i64 r = run_at(j);
      if (r > m_cap)
        fail(Err::NotVerified,
             "detection_constant: run at " + std::to_string(j) +
                 " exceeds cap " + std::to_string(m_cap));
      worst = std::max(worst, r);
    }
    return worst + 1;
  };

  i64 n = 4096;
  i64 m = m_over(n);
  while (true) {
    if ((i64)X.params().p * n > X.window_budget)
      fail(Err::Unstable, "detection_constant: no stabilization");
    n *= X.params().p;
    i64 m2 = m_over(n);
    if (m2 == m) break;
    m = m2;
  }
  // Skeleton cells repeat indefinitely; spot-check the claimed runs anyway.
  for (i64 j = 0; j < 64; ++j)
    if (X.fill_depth_capped(j, level) <= level && run_at(j) < std::min(m, m_cap))
      fail(Err::NotVerified, "detection_constant: skeleton cell broke a run");
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    X.rule_caches().detection[k] = {(int)m, n};
  }
  return {(int)m, n};
}

Phase induced_shift(Subshift& X, const Rule& f, int level) {
  const i64 M = checked_power(X.params().p, level);
  const i64 R = f.radius;
  i64 phases[2];
  const i64 samples[2] = {0, 9973};
  for (int s = 0; s < 2; ++s) {
    i64 len = 4 * M + 64;
    while (true) {
      auto src = X.point_window(samples[s] - R, samples[s] + len + R);
      auto img = apply_rule(X, f, src);
      try {
        phases[s] = phase_of(X, img, level).value;
        break;
      } catch (const Error& e) {
        if (e.kind() != Err::WindowTooShort || len > X.window_budget) throw;
        len *= 2;
      }
    }
  }
  if (phases[0] != phases[1])
    fail(Err::Inconsistent,
         "induced_shift: samples disagree (" + std::to_string(phases[0]) +
             " vs " + std::to_string(phases[1]) + "); not an endomorphism?");
  return {phases[0], M};
}

}  // namespace toeplitz
