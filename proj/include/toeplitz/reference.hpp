#pragma once

#include "toeplitz/common.hpp"
#include "toeplitz/params.hpp"

namespace toeplitz {

// Serial reference generator: iterates the fill substitution on an all-hole
// working window padded by one full period p^depth per side, then restricts
// to [a, b]. Kept as the independent oracle for the per-cell kernel.
PartialWindow reference_generate(const Params& params, int depth, i64 a, i64 b,
                                 i64 cell_budget = i64{1} << 26);

}  // namespace toeplitz
