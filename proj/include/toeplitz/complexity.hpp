#pragma once

#include <utility>
#include <vector>

#include "toeplitz/common.hpp"
#include "toeplitz/substrate.hpp"

namespace toeplitz {

struct ComplexityProfile {
  std::vector<std::pair<i64, i64>> entries;  // (k, n(k)), increasing k
  Params params;

  bool has(i64 k) const;
  i64 at(i64 k) const;  // MissingEntry when absent
};

i64 count_factors(Subshift& X, i64 k);
ComplexityProfile complexity_profile(Subshift& X, i64 from, i64 to);

struct RecurrenceReport {
  bool ok = true;
  std::vector<i64> failures;  // k violating n(k) <= p * n(ceil(qk/p) + 2p)
  std::vector<i64> vacuous;   // k where the target length is >= k
};
RecurrenceReport recurrence_check(const ComplexityProfile& profile);

// Least-squares slope of log n(k) against log k over [k_lo, k_hi].
// Diagnostic only; the sole floating-point computation in the project.
double exponent_fit(const ComplexityProfile& profile, i64 k_lo, i64 k_hi);

std::string profile_to_csv(const ComplexityProfile& profile);

}  // namespace toeplitz
