#include "toeplitz/substrate.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <numeric>

namespace toeplitz {

i64 occurrences(std::string_view u, std::string_view v) {
  if (u.empty()) fail(Err::BadInput, "occurrences: pattern must be nonempty");
  if (u.size() > v.size()) return 0;
  i64 count = 0;
  for (size_t i = 0; i + u.size() <= v.size(); ++i)
    if (v.compare(i, u.size(), u) == 0) ++count;
  return count;
}

namespace {

// Least hole of y at a nonnegative absolute index, or nullopt.
std::optional<i64> find_anchor(const PartialWindow& y) {
  for (i64 i = std::max<i64>(y.lo(), 0); i <= y.hi(); ++i)
    if (y.at(i) == kHole) return i;
  return std::nullopt;
}

template <typename ZAt, typename ZCovers>
PartialWindow fill_impl(const PartialWindow& y, ZAt z_at, ZCovers z_covers,
                        bool allow_full) {
  auto anchor = find_anchor(y);
  if (!anchor) {
    if (allow_full && y.hole_free()) return y;
    fail(Err::NoAnchor, "fill: no hole at a nonnegative index");
  }
  PartialWindow out = y;
  i64 k = 0;
  for (i64 i = *anchor; i <= y.hi(); ++i)
    if (y.at(i) == kHole) {
      if (!z_covers(k))
        fail(Err::InsufficientFill,
             "fill: sequence does not cover index " + std::to_string(k));
      out.at(i) = z_at(k);
      ++k;
    }
  k = -1;
  for (i64 i = *anchor - 1; i >= y.lo(); --i)
    if (y.at(i) == kHole) {
      if (!z_covers(k))
        fail(Err::InsufficientFill,
             "fill: sequence does not cover index " + std::to_string(k));
      out.at(i) = z_at(k);
      --k;
    }
  return out;
}

}  // namespace

PartialWindow fill(const PartialWindow& y, const PartialWindow& z,
                   bool allow_full) {
  return fill_impl(
      y, [&](i64 k) { return z.at(k); }, [&](i64 k) { return z.covers(k); },
      allow_full);
}

PartialWindow fill_periodic(const PartialWindow& y, const std::string& word,
                            bool allow_full) {
  if (word.empty()) fail(Err::BadInput, "fill_periodic: empty period word");
  i64 len = (i64)word.size();
  return fill_impl(
      y, [&](i64 k) { return word[(size_t)mod_floor(k, len)]; },
      [](i64) { return true; }, allow_full);
}

bool lazy_period_check(const std::string& period_word, i64 t) {
  if (period_word.empty())
    fail(Err::BadInput, "lazy_period_check: empty word");
  if (t < 1) fail(Err::BadInput, "lazy_period_check: period must be >= 1");
  i64 n = (i64)period_word.size();
  i64 g = std::gcd(t, n);
  for (i64 c = 0; c < g; ++c) {
    char seen = 0;
    for (i64 i = c; i < n; i += g) {
      char x = period_word[(size_t)i];
      if (x == kHole) continue;
      if (seen != 0 && x != seen) return false;
      seen = x;
    }
  }
  return true;
}

i64 least_lazy_period(const std::string& period_word) {
  for (i64 t = 1; t <= (i64)period_word.size(); ++t)
    if (lazy_period_check(period_word, t)) return t;
  return (i64)period_word.size();
}

// ---------------------------------------------------------------------------

Subshift::Subshift(Params params) : params_(std::move(params)) {
  if (params_.hole_offsets.empty())
    fail(Err::BadInput, "subshift: seed word has no holes");
}

i64 Subshift::hole_position(i64 n) const {
  i64 m = floor_div(n, params_.q);
  int t = (int)(n - m * params_.q);
  return m * params_.p + params_.hole_offsets[t];
}

i64 Subshift::hole_index(i64 pos) const {
  i64 m = floor_div(pos, params_.p);
  int r = (int)(pos - m * params_.p);
  int t = params_.hole_rank[r];
  if (t < 0) fail(Err::BadInput, "hole_index: not a hole position");
  return m * params_.q + t;
}

bool Subshift::is_hole_position(i64 pos) const {
  return params_.w[(size_t)mod_floor(pos, params_.p)] == kHole;
}

Subshift::Cell Subshift::eval_cell(i64 i) const {
  i64 n = i;
  for (int d = 1; d <= kDepthCap; ++d) {
    int r = (int)mod_floor(n, params_.p);
    char c = params_.w[(size_t)r];
    if (c != kHole) return {c, d};
    n = params_.q * floor_div(n, params_.p) + params_.hole_rank[r];
  }
  fail(Err::DepthCapExceeded,
       "cell " + std::to_string(i) + " still open at depth " +
           std::to_string(kDepthCap));
}

int Subshift::fill_depth_capped(i64 i, int max_depth) const {
  i64 n = i;
  for (int d = 1; d <= max_depth; ++d) {
    int r = (int)mod_floor(n, params_.p);
    if (params_.w[(size_t)r] != kHole) return d;
    n = params_.q * floor_div(n, params_.p) + params_.hole_rank[r];
  }
  return max_depth + 1;
}

PartialWindow Subshift::generate(int depth, i64 a, i64 b) const {
  if (depth < 1) fail(Err::BadInput, "generate: depth must be >= 1");
  if (depth > kDepthCap) fail(Err::BadInput, "generate: depth above cap");
  if (a > b) fail(Err::BadInput, "generate: empty range");
  if (b - a + 1 > window_budget)
    fail(Err::RangeTooLarge, "generate: range exceeds window budget");
  PartialWindow out{a, std::string((size_t)(b - a + 1), kHole)};
  const i64 n_cells = b - a + 1;
#pragma omp parallel for schedule(static)
  for (i64 idx = 0; idx < n_cells; ++idx) {
    i64 n = a + idx;
    for (int d = 1; d <= depth; ++d) {
      int r = (int)mod_floor(n, params_.p);
      char c = params_.w[(size_t)r];
      if (c != kHole) {
        out.cells[(size_t)idx] = c;
        break;
      }
      n = params_.q * floor_div(n, params_.p) + params_.hole_rank[r];
    }
  }
  return out;
}

PartialWindow Subshift::point_window(i64 a, i64 b) const {
  if (a > b) fail(Err::BadInput, "point_window: empty range");
  if (b - a + 1 > window_budget)
    fail(Err::RangeTooLarge, "point_window: range exceeds window budget");
  PartialWindow out = generate(kDepthCap, a, b);
  if (!out.hole_free())
    fail(Err::DepthCapExceeded, "point_window: cell still open at depth cap");
  return out;
}

PartialWindow Subshift::skeleton(int level, i64 a, i64 b) const {
  if (level < 0) fail(Err::BadInput, "skeleton: level must be >= 0");
  if (level == 0) return point_window(a, b);
  return generate(level, a, b);
}

std::vector<i64> Subshift::essential_periods(i64 k_max) const {
  if (k_max < 1) fail(Err::BadInput, "essential_periods: k_max must be >= 1");
  std::vector<char> val((size_t)k_max);
  std::vector<int> dep((size_t)k_max);
  for (i64 i = 0; i < k_max; ++i) {
    Cell c = eval_cell(i);
    val[(size_t)i] = c.value;
    dep[(size_t)i] = c.depth;
  }
  std::vector<i64> out;
  std::string W;
  for (i64 k = 1; k <= k_max; ++k) {
    int v = 0;
    for (i64 t = k; t % params_.p == 0; t /= params_.p) ++v;
    W.assign((size_t)k, kHole);
    for (i64 i = 0; i < k; ++i)
      if (dep[(size_t)i] <= v) W[(size_t)i] = val[(size_t)i];
    // Rotations fixing the period word form a subgroup of Z_k, so only
    // proper divisors of k need checking.
    bool essential = true;
    for (i64 l = 1; l < k && essential; ++l) {
      if (k % l != 0) continue;
      bool fixed = true;
      for (i64 i = 0; i < k; ++i)
        if (W[(size_t)((i + l) % k)] != W[(size_t)i]) {
          fixed = false;
          break;
        }
      if (fixed) essential = false;
    }
    if (essential) out.push_back(k);
  }
  return out;
}

i64 Subshift::hole_gap_min(int depth) const {
  if (depth < 1) fail(Err::BadInput, "hole_gap_min: depth must be >= 1");
  const i64 period = checked_power(params_.p, depth);
  if (period > window_budget)
    fail(Err::RangeTooLarge, "hole_gap_min: period exceeds window budget");
  std::vector<i64> holes;
#pragma omp parallel
  {
    std::vector<i64> local;
#pragma omp for schedule(static) nowait
    for (i64 i = 0; i < period; ++i)
      if (fill_depth_capped(i, depth) > depth) local.push_back(i);
#pragma omp critical
    holes.insert(holes.end(), local.begin(), local.end());
  }
  std::sort(holes.begin(), holes.end());
  if (holes.empty())
    fail(Err::NoHoles, "hole_gap_min: no holes at this depth");
  i64 best = LLONG_MAX;
  for (size_t i = 1; i < holes.size(); ++i)
    best = std::min(best, holes[i] - holes[i - 1]);
  best = std::min(best, holes.front() + period - holes.back());
  return best;
}

PartialWindow Subshift::psi_w(const PartialWindow& z) const {
  if (!z.hole_free()) fail(Err::BadInput, "psi_w: input must be hole-free");
  i64 lo = hole_position(z.lo());
  i64 hi = hole_position(z.hi());
  PartialWindow out{lo, std::string((size_t)(hi - lo + 1), kHole)};
  for (i64 j = lo; j <= hi; ++j) {
    char c = params_.w[(size_t)mod_floor(j, params_.p)];
    out.at(j) = (c != kHole) ? c : z.at(hole_index(j));
  }
  return out;
}

PartialWindow Subshift::psi_w_inverse(const PartialWindow& y) const {
  if (!y.hole_free())
    fail(Err::BadInput, "psi_w_inverse: input must be hole-free");
  for (i64 j = y.lo(); j <= y.hi(); ++j) {
    char c = params_.w[(size_t)mod_floor(j, params_.p)];
    if (c != kHole && y.at(j) != c)
      fail(Err::PhaseMismatch,
           "psi_w_inverse: window disagrees with the phase-0 skeleton at " +
               std::to_string(j));
  }
  i64 pos = y.lo();
  while (pos <= y.hi() && !is_hole_position(pos)) ++pos;
  if (pos > y.hi())
    fail(Err::BadInput, "psi_w_inverse: window spans no carrier cells");
  i64 m0 = hole_index(pos);
  std::string cells;
  for (i64 m = m0; hole_position(m) <= y.hi(); ++m)
    cells += y.at(hole_position(m));
  return {m0, cells};
}

// --- language and counting -------------------------------------------------

namespace {

// Suffix array by prefix doubling over the cyclic string with a sentinel.
std::vector<int> build_sa(std::string_view s) {
  std::string t(s);
  t.push_back('\0');
  const int n = (int)t.size();
  std::vector<int> sa(n), classes(n), sa2(n), classes2(n);
  std::vector<int> cnt(std::max(256, n), 0);
  for (int i = 0; i < n; ++i) cnt[(unsigned char)t[(size_t)i]]++;
  for (int i = 1; i < 256; ++i) cnt[i] += cnt[i - 1];
  for (int i = n - 1; i >= 0; --i) sa[--cnt[(unsigned char)t[(size_t)i]]] = i;
  classes[sa[0]] = 0;
  int c = 1;
  for (int i = 1; i < n; ++i) {
    if (t[(size_t)sa[i]] != t[(size_t)sa[i - 1]]) ++c;
    classes[sa[i]] = c - 1;
  }
  for (int k = 1; k < n && c < n; k <<= 1) {
    for (int i = 0; i < n; ++i) {
      sa2[i] = sa[i] - k;
      if (sa2[i] < 0) sa2[i] += n;
    }
    std::fill(cnt.begin(), cnt.begin() + c, 0);
    for (int i = 0; i < n; ++i) cnt[classes[sa2[i]]]++;
    for (int i = 1; i < c; ++i) cnt[i] += cnt[i - 1];
    for (int i = n - 1; i >= 0; --i) sa[--cnt[classes[sa2[i]]]] = sa2[i];
    classes2[sa[0]] = 0;
    c = 1;
    for (int i = 1; i < n; ++i) {
      int a1 = classes[sa[i]], a2 = classes[(sa[i] + k) % n];
      int b1 = classes[sa[i - 1]], b2 = classes[(sa[i - 1] + k) % n];
      if (a1 != b1 || a2 != b2) ++c;
      classes2[sa[i]] = c - 1;
    }
    classes.swap(classes2);
  }
  // Drop the sentinel suffix (always first) and re-index over s.
  std::vector<int> out;
  out.reserve((size_t)n - 1);
  for (int i = 0; i < n; ++i)
    if (sa[i] != n - 1) out.push_back(sa[i]);
  return out;
}

std::vector<int> build_lcp(std::string_view s, const std::vector<int>& sa) {
  const int n = (int)s.size();
  std::vector<int> rank_(n), lcp(n, 0);
  for (int i = 0; i < n; ++i) rank_[sa[(size_t)i]] = i;
  int h = 0;
  for (int i = 0; i < n; ++i) {
    if (rank_[(size_t)i] > 0) {
      int j = sa[(size_t)(rank_[(size_t)i] - 1)];
      while (i + h < n && j + h < n && s[(size_t)(i + h)] == s[(size_t)(j + h)])
        ++h;
      lcp[(size_t)rank_[(size_t)i]] = h;
      if (h) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

i64 start_window(int p, i64 len) {
  i64 pw = 1;
  while (pw < len) pw *= p;
  return std::max<i64>(4 * pw, 4096);
}

}  // namespace

std::string_view Subshift::point_prefix(i64 n) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  ensure_prefix(n);
  return std::string_view(xbuf_).substr(0, (size_t)n);
}

void Subshift::ensure_prefix(i64 n) {
  i64 old = (i64)xbuf_.size();
  if (n <= old) return;
  if (n > window_budget)
    fail(Err::RangeTooLarge, "point prefix exceeds window budget");
  xbuf_.resize((size_t)n, kHole);
  bool open = false;
#pragma omp parallel for schedule(static) reduction(|| : open)
  for (i64 i = old; i < n; ++i) {
    i64 m = i;
    char value = kHole;
    for (int d = 1; d <= kDepthCap; ++d) {
      int r = (int)mod_floor(m, params_.p);
      char c = params_.w[(size_t)r];
      if (c != kHole) {
        value = c;
        break;
      }
      m = params_.q * floor_div(m, params_.p) + params_.hole_rank[r];
    }
    if (value == kHole)
      open = true;
    else
      xbuf_[(size_t)i] = value;
  }
  if (open)
    fail(Err::DepthCapExceeded, "point prefix: cell still open at depth cap");
}

void Subshift::ensure_language(int len) {
  if (len < 1) fail(Err::BadInput, "language: length must be >= 1");
  if (lang_.count(len)) return;

  auto count_at = [&](i64 n) -> i64 {
    ensure_prefix(n);
    std::string_view s = std::string_view(xbuf_).substr(0, (size_t)n);
    auto sa = build_sa(s);
    auto lcp = build_lcp(s, sa);
    i64 dup = 0;
    for (int v : lcp)
      if (v >= len) ++dup;
    return (n - len + 1) - dup;
  };

  // Rounds grow by a factor of p so that consecutive windows always straddle
  // the next period scale; growth by 2 can certify spuriously between
  // scales.
  i64 N = start_window(params_.p, len);
  i64 prev = count_at(N);
  while (true) {
    if (params_.p * N > window_budget)
      fail(Err::Unstable, "language: no stabilization within window budget");
    N *= params_.p;
    i64 cur = count_at(N);
    if (cur == prev) break;
    prev = cur;
  }
  // Cached lengths must stay mutually consistent (factor closure across
  // lengths). The invariant: every cached count is also the count inside
  // the largest window any length has needed so far. Short lengths settle
  // early; compare them against the stored floor histogram.
  if (N < lang_floor_) {
    i64 at_floor = floor_count(len);
    if (at_floor != prev) {
      N = lang_floor_;  // extract from the floor snapshot instead
      prev = at_floor;
    }
  }

  // Factors of the smaller window are factors of the full one, so equal
  // counts certify equal sets; extract them in order from the final array.
  std::string_view s = std::string_view(xbuf_).substr(0, (size_t)N);
  auto sa = build_sa(s);
  auto lcp = build_lcp(s, sa);
  std::vector<std::string> words;
  words.reserve((size_t)prev);
  int run = INT_MAX;
  bool first = true;
  for (size_t idx = 0; idx < sa.size(); ++idx) {
    if (idx > 0) run = std::min(run, lcp[idx]);
    if (sa[idx] + len <= (i64)s.size()) {
      if (first || run < len) {
        words.emplace_back(s.substr((size_t)sa[idx], (size_t)len));
        first = false;
        run = INT_MAX;
      }
    }
  }
  assert((i64)words.size() == prev);

  if (N > lang_floor_) {
    // The floor rises: re-certify every cached length against the new
    // window in one histogram pass, then store the histogram for future
    // short lengths.
    std::vector<i64> ge((size_t)kFloorHistogram + 2, 0);
    for (int v : lcp) ge[(size_t)std::min<i64>(v, kFloorHistogram + 1)]++;
    for (i64 k = kFloorHistogram; k >= 1; --k)
      ge[(size_t)k] += ge[(size_t)k + 1];
    lang_floor_ = N;
    floor_ge_ = std::move(ge);
    for (const auto& [cached_len, entry] : lang_)
      if (floor_count(cached_len) != (i64)entry.words.size())
        fail(Err::Unstable,
             "language: earlier certificate for length " +
                 std::to_string(cached_len) +
                 " undershot; raise the initial window");
  }
  lang_[len] = LangEntry{std::move(words), N};
}

// Count of distinct factors of this length inside the floor window.
i64 Subshift::floor_count(int len) {
  if (len <= kFloorHistogram && !floor_ge_.empty())
    return (lang_floor_ - len + 1) - floor_ge_[(size_t)len];
  ensure_prefix(lang_floor_);
  std::string_view s = std::string_view(xbuf_).substr(0, (size_t)lang_floor_);
  auto sa = build_sa(s);
  auto lcp = build_lcp(s, sa);
  i64 dup = 0;
  for (int v : lcp)
    if (v >= len) ++dup;
  return (lang_floor_ - len + 1) - dup;
}

const std::vector<std::string>& Subshift::language(int len) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  ensure_language(len);
  return lang_.at(len).words;
}

bool Subshift::in_language(int len, std::string_view u) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  ensure_language(len);
  const auto& words = lang_.at(len).words;
  return std::binary_search(words.begin(), words.end(), u,
                            [](std::string_view a, std::string_view b) {
                              return a < b;
                            });
}

i64 Subshift::language_window(int len) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  ensure_language(len);
  return lang_.at(len).window;
}

std::vector<i64> Subshift::window_counts(i64 n, int k_max) {
  ensure_prefix(n);
  std::string_view s = std::string_view(xbuf_).substr(0, (size_t)n);
  auto sa = build_sa(s);
  auto lcp = build_lcp(s, sa);
  std::vector<i64> ge((size_t)k_max + 2, 0);
  for (int v : lcp) ge[(size_t)std::min<i64>(v, k_max + 1)]++;
  for (i64 k = k_max; k >= 1; --k) ge[(size_t)k] += ge[(size_t)k + 1];
  std::vector<i64> counts((size_t)k_max + 1, 0);
  for (i64 k = 1; k <= k_max && k <= n; ++k)
    counts[(size_t)k] = (n - k + 1) - ge[(size_t)k];
  return counts;
}

Subshift::FactorCounts Subshift::factor_counts(int k_max) {
  if (k_max < 1) fail(Err::BadInput, "factor_counts: k_max must be >= 1");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (counts_ && counts_->first >= k_max) {
    FactorCounts out;
    out.window = counts_->second.window;
    out.n.assign(counts_->second.n.begin(),
                 counts_->second.n.begin() + k_max + 1);
    return out;
  }
  i64 N = start_window(params_.p, k_max);
  std::vector<i64> prev = window_counts(N, k_max);
  while (true) {
    if (params_.p * N > window_budget)
      fail(Err::Unstable, "factor_counts: no stabilization within budget");
    N *= params_.p;
    std::vector<i64> cur = window_counts(N, k_max);
    if (cur == prev) break;
    prev = std::move(cur);
  }
  FactorCounts out{std::move(prev), N};
  counts_ = {k_max, out};
  return out;
}

const std::string& Subshift::skeleton_period(int level) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = skeleton_periods_.find(level);
  if (it != skeleton_periods_.end()) return it->second;
  if (level < 1) fail(Err::BadInput, "skeleton_period: level must be >= 1");
  i64 period = checked_power(params_.p, level);
  if (period > window_budget)
    fail(Err::RangeTooLarge, "skeleton_period: period exceeds budget");
  auto w = generate(level, 0, period - 1);
  return skeleton_periods_.emplace(level, std::move(w.cells)).first->second;
}

}  // namespace toeplitz
