#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "toeplitz/common.hpp"

namespace toeplitz {

class Subshift;

struct WordHash {
  using is_transparent = void;
  size_t operator()(std::string_view v) const {
    return std::hash<std::string_view>{}(v);
  }
};

// A local rule: radius R plus an output symbol for every language word of
// length 2R+1. Rules are total over the language and undefined elsewhere.
struct Rule {
  int radius = 0;
  std::unordered_map<std::string, char, WordHash, std::equal_to<>> table;

  char lookup(std::string_view u) const {
    auto it = table.find(u);
    if (it == table.end())
      fail(Err::UnknownWord, "word missing from rule table", std::string(u));
    return it->second;
  }
};

Rule identity_rule(Subshift& X);
Rule shift_rule(Subshift& X, i64 k);  // u -> u[center + k], radius |k|

// Slides the rule across a hole-free word; |u| >= 2R+1, result shrinks by 2R.
std::string apply_to_word(const Rule& f, std::string_view u);
PartialWindow apply_rule(Subshift& X, const Rule& f, const PartialWindow& y);

Rule compose(Subshift& X, const Rule& f, const Rule& g);  // f after g
Rule compose_power(Subshift& X, const Rule& f, i64 n);    // n >= 0

// Semantic equality: agreement on every language word of the common radius.
bool rules_equal(Subshift& X, const Rule& f, const Rule& g);
Rule pad_rule(Subshift& X, const Rule& f, int radius);
Rule minimize(Subshift& X, const Rule& f);

// If the rule acts as u -> u[center + i] on the whole language, returns i.
std::optional<i64> pure_shift_exponent(Subshift& X, const Rule& f);

struct EndoCertificate {
  Rule rule;
  int checked_depth = 0;
  Phase induced;  // induced rotation on the level-1 finite factor
};

// Closure check: every language word of length `depth` must map into the
// language. Honest semi-decision; failures carry the offending word.
EndoCertificate certify_endomorphism(Subshift& X, const Rule& f, int depth);

// A language factor whose bitwise complement is not in the language. Proves
// that the flip symbol map is not an endomorphism.
std::string flip_witness(Subshift& X, int max_len = 200);

std::string rule_to_json(const Rule& f);
Rule rule_from_json(const std::string& text);

}  // namespace toeplitz
