#include "toeplitz/reference.hpp"

#include <algorithm>

#include "toeplitz/substrate.hpp"

namespace toeplitz {

PartialWindow reference_generate(const Params& params, int depth, i64 a,
                                 i64 b, i64 cell_budget) {
  if (depth < 1) fail(Err::BadInput, "reference_generate: depth must be >= 1");
  if (a > b) fail(Err::BadInput, "reference_generate: empty range");
  i64 pad = checked_power(params.p, depth, cell_budget);
  i64 lo = std::min<i64>(a, 0) - pad;
  i64 hi = std::max<i64>(b, 0) + pad;
  if (hi - lo + 1 > cell_budget)
    fail(Err::RangeTooLarge, "reference_generate: padded window over budget");
  PartialWindow cur{lo, std::string((size_t)(hi - lo + 1), kHole)};
  for (int d = 0; d < depth; ++d) cur = fill_periodic(cur, params.w);
  PartialWindow out{a, std::string((size_t)(b - a + 1), kHole)};
  for (i64 i = a; i <= b; ++i) out.at(i) = cur.at(i);
  return out;
}

}  // namespace toeplitz
