#include "toeplitz/endo_search.hpp"

#include <algorithm>

#include "toeplitz/autgroup.hpp"

namespace toeplitz {

namespace {

struct SearchState {
  Subshift* X;
  int radius;
  int word_len;    // 2R+1
  int img_len;     // depth - 2R, the closure window on the image side
  std::string_view window;            // reference window of x
  const std::vector<std::string>* words;       // sorted table domain
  const std::vector<std::string>* img_words;   // sorted language(img_len)
  std::vector<int> word_at;   // word id at each window position
  std::vector<char> assign;   // per word id: 0 = unset, else output symbol
  std::string img;            // image prefix, one cell per window position
  std::vector<Rule> found;

  bool img_ok(i64 end_pos) const {
    if (end_pos + 1 < img_len) return true;
    std::string_view v(img);
    v = v.substr((size_t)(end_pos + 1 - img_len), (size_t)img_len);
    return std::binary_search(img_words->begin(), img_words->end(), v,
                              [](std::string_view a, std::string_view b) {
                                return a < b;
                              });
  }

  void advance(i64 pos) {
    const i64 limit = (i64)window.size() - word_len + 1;
    for (i64 i = pos; i < limit; ++i) {
      int id = word_at[(size_t)i];
      if (assign[(size_t)id] == 0) {
        for (char c : {kZero, kOne}) {
          assign[(size_t)id] = c;
          img[(size_t)i] = c;
          if (img_ok(i)) advance(i + 1);
        }
        assign[(size_t)id] = 0;
        return;
      }
      img[(size_t)i] = assign[(size_t)id];
      if (!img_ok(i)) return;
    }
    Rule f;
    f.radius = radius;
    f.table.reserve(words->size());
    for (size_t id = 0; id < words->size(); ++id) {
      if (assign[id] == 0) return;  // word never constrained: reject
      f.table.emplace((*words)[id], assign[id]);
    }
    found.push_back(std::move(f));
  }
};

}  // namespace

std::vector<Rule> enumerate_endomorphisms(Subshift& X, int radius, int depth,
                                          int radius_budget) {
  if (radius < 0) fail(Err::BadInput, "enumerate: radius must be >= 0");
  if (radius > radius_budget)
    fail(Err::BudgetExceeded, "enumerate: radius above budget");
  if (depth < 4 * radius + 2)
    fail(Err::BadInput, "enumerate: depth must be >= 4R+2");

  SearchState st;
  st.X = &X;
  st.radius = radius;
  st.word_len = 2 * radius + 1;
  st.img_len = depth - 2 * radius;
  st.words = &X.language(st.word_len);
  st.img_words = &X.language(st.img_len);
  i64 n = std::max(X.language_window(depth), X.language_window(st.word_len));
  st.window = X.point_prefix(n);

  st.word_at.resize((size_t)(n - st.word_len + 1));
  for (i64 i = 0; i + st.word_len <= n; ++i) {
    std::string_view v = st.window.substr((size_t)i, (size_t)st.word_len);
    auto it = std::lower_bound(st.words->begin(), st.words->end(), v,
                               [](std::string_view a, std::string_view b) {
                                 return a < b;
                               });
    st.word_at[(size_t)i] = (int)(it - st.words->begin());
  }
  st.assign.assign(st.words->size(), 0);
  st.img.assign(st.window.size(), '?');
  st.advance(0);

  // Confirm each survivor with the formal closure check at the same depth.
  std::vector<Rule> out;
  for (auto& f : st.found) {
    certify_endomorphism(X, f, depth);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [&](const Rule& a, const Rule& b) {
    std::string ka, kb;
    for (const auto& u : *st.words) {
      ka += a.lookup(u);
      kb += b.lookup(u);
    }
    return ka < kb;
  });
  return out;
}

std::vector<Classified> classify(Subshift& X, const std::vector<Rule>& rules) {
  std::vector<Classified> out;
  out.reserve(rules.size());
  for (const auto& f : rules)
    out.push_back({f, decompose(X, f).value});
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].value == out[j].value)
        fail(Err::Inconsistent,
             "classify: two rules share the value " + out[i].value.str());
  for (const auto& c : out)
    if (!member(X.params(), c.value))
      fail(Err::Inconsistent,
           "classify: value " + c.value.str() + " outside the group");
  std::sort(out.begin(), out.end(), [](const Classified& a, const Classified& b) {
    return mpq_class(a.value.num, a.value.den) <
           mpq_class(b.value.num, b.value.den);
  });
  return out;
}

}  // namespace toeplitz
