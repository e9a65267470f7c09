#include "toeplitz/blockmap.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

#include "toeplitz/factor.hpp"
#include "toeplitz/substrate.hpp"

namespace toeplitz {

namespace {

// Build a rule over language(2R+1) from a per-word evaluator. The evaluator
// must be safe to call concurrently; errors are surfaced after the loop.
template <typename Eval>
Rule build_rule(Subshift& X, int radius, Eval eval) {
  const auto& words = X.language(2 * radius + 1);
  std::vector<char> out(words.size(), 0);
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 64)
  for (i64 i = 0; i < (i64)words.size(); ++i) {
    try {
      out[(size_t)i] = eval(words[(size_t)i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  Rule f;
  f.radius = radius;
  f.table.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) f.table.emplace(words[i], out[i]);
  return f;
}

}  // namespace

Rule identity_rule(Subshift& X) {
  return build_rule(X, 0, [](const std::string& u) { return u[0]; });
}

Rule shift_rule(Subshift& X, i64 k) {
  int radius = (int)std::llabs(k);
  return build_rule(X, radius, [radius, k](const std::string& u) {
    return u[(size_t)(radius + k)];
  });
}

std::string apply_to_word(const Rule& f, std::string_view u) {
  const size_t span = 2 * (size_t)f.radius + 1;
  if (u.size() < span)
    fail(Err::WindowTooShort, "apply: word shorter than the rule span");
  std::string out;
  out.reserve(u.size() - span + 1);
  for (size_t i = 0; i + span <= u.size(); ++i)
    out += f.lookup(u.substr(i, span));
  return out;
}

PartialWindow apply_rule(Subshift& X, const Rule& f, const PartialWindow& y) {
  (void)X;
  if (!y.hole_free()) fail(Err::BadInput, "apply: window must be hole-free");
  return {y.lo() + f.radius, apply_to_word(f, y.cells)};
}

Rule compose(Subshift& X, const Rule& f, const Rule& g) {
  int radius = f.radius + g.radius;
  return build_rule(X, radius, [&](const std::string& u) {
    std::string mid = apply_to_word(g, u);
    return f.lookup(mid);
  });
}

Rule compose_power(Subshift& X, const Rule& f, i64 n) {
  if (n < 0) fail(Err::BadInput, "compose_power: exponent must be >= 0");
  if (n == 0) return identity_rule(X);
  Rule acc = f;
  for (i64 i = 1; i < n; ++i) acc = minimize(X, compose(X, acc, f));
  return acc;
}

Rule pad_rule(Subshift& X, const Rule& f, int radius) {
  if (radius < f.radius) fail(Err::BadInput, "pad: radius below rule radius");
  if (radius == f.radius) return f;
  int off = radius - f.radius;
  size_t span = 2 * (size_t)f.radius + 1;
  return build_rule(X, radius, [&, off, span](const std::string& u) {
    return f.lookup(std::string_view(u).substr((size_t)off, span));
  });
}

bool rules_equal(Subshift& X, const Rule& f, const Rule& g) {
  int radius = std::max(f.radius, g.radius);
  const auto& words = X.language(2 * radius + 1);
  size_t fo = (size_t)(radius - f.radius), fs = 2 * (size_t)f.radius + 1;
  size_t go = (size_t)(radius - g.radius), gs = 2 * (size_t)g.radius + 1;
  for (const auto& u : words) {
    std::string_view v(u);
    if (f.lookup(v.substr(fo, fs)) != g.lookup(v.substr(go, gs))) return false;
  }
  return true;
}

Rule minimize(Subshift& X, const Rule& f) {
  const int R = f.radius;
  const auto& words = X.language(2 * R + 1);
  std::vector<char> out(words.size());
  for (size_t i = 0; i < words.size(); ++i) out[i] = f.lookup(words[i]);

  // Least centered radius whose window already determines the output: all
  // words sharing the trimmed core must agree. Canonical by construction.
  auto determined_by = [&](int r) -> bool {
    std::unordered_map<std::string_view, char, WordHash, std::equal_to<>> rep;
    rep.reserve(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
      std::string_view key =
          std::string_view(words[i]).substr((size_t)(R - r), (size_t)(2 * r + 1));
      auto [it, inserted] = rep.try_emplace(key, out[i]);
      if (!inserted && it->second != out[i]) return false;
    }
    return true;
  };
  int radius = R;
  for (int r = 0; r < R; ++r)
    if (determined_by(r)) {
      radius = r;
      break;
    }
  if (radius == R) return f;

  std::unordered_map<std::string, char, WordHash, std::equal_to<>> core;
  for (size_t i = 0; i < words.size(); ++i)
    core.emplace(words[i].substr((size_t)(R - radius), (size_t)(2 * radius + 1)),
                 out[i]);
  Rule g;
  g.radius = radius;
  const auto& small = X.language(2 * radius + 1);
  g.table.reserve(small.size());
  for (const auto& u : small) {
    auto it = core.find(u);
    if (it == core.end())
      fail(Err::UnknownWord, "minimize: core word never observed", u);
    g.table.emplace(u, it->second);
  }
  return g;
}

std::optional<i64> pure_shift_exponent(Subshift& X, const Rule& f) {
  const int R = f.radius;
  const auto& words = X.language(2 * R + 1);
  for (i64 s = 0; s <= R; ++s)
    for (i64 i : {s, -s}) {
      bool ok = true;
      for (const auto& u : words)
        if (f.lookup(u) != u[(size_t)(R + i)]) {
          ok = false;
          break;
        }
      if (ok) return i;
      if (s == 0) break;
    }
  return std::nullopt;
}

EndoCertificate certify_endomorphism(Subshift& X, const Rule& f, int depth) {
  if (depth < 2 * f.radius + 1)
    fail(Err::BadInput, "certify: depth must be >= 2R+1");
  const auto& words = X.language(depth);
  int img_len = depth - 2 * f.radius;
  X.language(img_len);  // populate before the scan
  for (const auto& u : words) {
    std::string img = apply_to_word(f, u);
    if (!X.in_language(img_len, img))
      fail(Err::ClosureFailure,
           "closure fails: image of '" + u + "' leaves the language", u);
  }
  return {f, depth, induced_shift(X, f, 1)};
}

std::string flip_witness(Subshift& X, int max_len) {
  {
    std::lock_guard<std::recursive_mutex> lock(X.mutex());
    if (X.rule_caches().flip_witness) return *X.rule_caches().flip_witness;
  }
  for (int len = 1; len <= max_len; ++len) {
    const auto& words = X.language(len);
    for (const auto& u : words) {
      std::string flipped(u);
      for (char& c : flipped) c = flip_letter(c);
      if (!std::binary_search(words.begin(), words.end(), flipped)) {
        std::lock_guard<std::recursive_mutex> lock(X.mutex());
        X.rule_caches().flip_witness = u;
        return u;
      }
    }
  }
  fail(Err::NotFound,
       "no flip witness up to length " + std::to_string(max_len) +
           "; the symbol-map assumption fails for this seed");
}

std::string rule_to_json(const Rule& f) {
  std::map<std::string, std::string> sorted;
  for (const auto& [word, out] : f.table) sorted[word] = std::string(1, out);
  nlohmann::ordered_json j;
  j["radius"] = f.radius;
  j["table"] = nlohmann::ordered_json::object();
  for (const auto& [word, out] : sorted) j["table"][word] = out;
  return j.dump();
}

Rule rule_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Rule f;
  f.radius = j.at("radius").get<int>();
  if (f.radius < 0) fail(Err::BadInput, "rule: negative radius");
  for (const auto& [word, out] : j.at("table").items()) {
    if ((i64)word.size() != 2 * (i64)f.radius + 1)
      fail(Err::BadInput, "rule: table key has the wrong length");
    std::string o = out.get<std::string>();
    if (o.size() != 1 || !is_letter(o[0]))
      fail(Err::BadInput, "rule: table value must be a single letter");
    f.table.emplace(word, o[0]);
  }
  if (f.table.empty()) fail(Err::BadInput, "rule: empty table");
  return f;
}

}  // namespace toeplitz
