#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toeplitz/blockmap.hpp"
#include "toeplitz/common.hpp"
#include "toeplitz/params.hpp"

namespace toeplitz {

// Number of (possibly overlapping) occurrences of u in v.
i64 occurrences(std::string_view u, std::string_view v);

// Writes the cells of z into the holes of y. The anchor is the least hole of
// y at a nonnegative absolute index; it receives z[0], holes to its right
// receive z[1], z[2], ... and holes to its left z[-1], z[-2], ....
// allow_full suppresses the NoAnchor error only when y has no holes at all.
PartialWindow fill(const PartialWindow& y, const PartialWindow& z,
                   bool allow_full = false);
// Same with z = word^Z (z covers every index).
PartialWindow fill_periodic(const PartialWindow& y, const std::string& word,
                            bool allow_full = false);

// t is a lazy period of word^Z iff equal cells whenever both are letters.
bool lazy_period_check(const std::string& period_word, i64 t);
i64 least_lazy_period(const std::string& period_word);

// The subshift generated by iterating the fill substitution on the seed w.
// Owns every cache (point prefix, language, factor counts, rule machinery);
// cache population is serialized behind a mutex, computed data is immutable
// afterwards.
class Subshift {
 public:
  static constexpr int kDepthCap = 64;

  explicit Subshift(Params params);
  const Params& params() const { return params_; }

  // --- hole enumeration of w^Z ------------------------------------------
  // H(n): absolute position of the n-th hole, H(0) = least nonnegative one.
  i64 hole_position(i64 n) const;
  i64 hole_index(i64 pos) const;  // inverse of H; pos must be a hole position
  bool is_hole_position(i64 pos) const;

  // --- per-cell kernel ----------------------------------------------------
  struct Cell {
    char value;
    int depth;  // level at which the substitution determines this cell
  };
  Cell eval_cell(i64 i) const;
  // Depth if <= max_depth, otherwise max_depth + 1 (cell still open there).
  int fill_depth_capped(i64 i, int max_depth) const;

  // --- windows ------------------------------------------------------------
  PartialWindow generate(int depth, i64 a, i64 b) const;  // x^depth on [a,b]
  PartialWindow point_window(i64 a, i64 b) const;
  PartialWindow skeleton(int level, i64 a, i64 b) const;
  std::vector<i64> essential_periods(i64 k_max) const;
  i64 hole_gap_min(int depth) const;

  PartialWindow psi_w(const PartialWindow& z) const;
  PartialWindow psi_w_inverse(const PartialWindow& y) const;

  // --- language -----------------------------------------------------------
  // Exact sorted factor set of the given length (window enumeration with
  // doubling until two consecutive rounds agree).
  const std::vector<std::string>& language(int len);
  bool in_language(int len, std::string_view u);
  i64 language_window(int len);

  struct FactorCounts {
    std::vector<i64> n;  // n[k] for 1 <= k <= k_max; n[0] unused
    i64 window = 0;
  };
  FactorCounts factor_counts(int k_max);

  // x restricted to [0, n), cached and grown on demand.
  std::string_view point_prefix(i64 n);

  // Period word of the level skeleton, x^level on [0, p^level).
  const std::string& skeleton_period(int level);

  i64 window_budget = i64{1} << 24;
  int sigma_budget = 4;

  // Memo slots owned here so that the rule machinery stays per-subshift.
  struct RuleCaches {
    std::map<std::pair<int, i64>, Rule> sigma_pow;  // (level, exponent)
    std::optional<int> right_radius;
    std::map<i64, std::pair<int, i64>> detection;  // k -> (m, window)
    std::optional<std::string> flip_witness;
    std::map<std::string, Rule> unlift_memo;                  // by rule key
    std::map<std::string, std::pair<i64, Rule>> lift_memo;    // by rule key
  };
  RuleCaches& rule_caches() { return rule_caches_; }
  std::recursive_mutex& mutex() { return mu_; }

  // Distinct-factor counts inside the prefix window of size n (no
  // stabilization); exposed for diagnostics and the benchmark.
  std::vector<i64> window_counts(i64 n, int k_max);

 private:
  void ensure_prefix(i64 n);
  void ensure_language(int len);

  Params params_;
  std::string xbuf_;  // x on [0, xbuf_.size())
  struct LangEntry {
    std::vector<std::string> words;
    i64 window = 0;
  };
  std::map<int, LangEntry> lang_;
  static constexpr i64 kFloorHistogram = 8192;
  i64 lang_floor_ = 0;  // largest window any certified length required
  std::vector<i64> floor_ge_;  // lcp tail counts at the floor window
  i64 floor_count(int len);
  std::map<int, std::string> skeleton_periods_;
  std::optional<std::pair<int, FactorCounts>> counts_;  // (k_max, counts)
  RuleCaches rule_caches_;
  std::recursive_mutex mu_;
};

}  // namespace toeplitz
