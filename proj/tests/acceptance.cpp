// Verification battery over the default seed. One PASS/FAIL line per
// criterion; exit status 0 only if everything passes.

#include <cstdio>

#include "toeplitz/substrate.hpp"
#include "toeplitz/verify.hpp"

int main() {
  using namespace toeplitz;
  Subshift X(Params::defaults());
  int index = 0;
  bool all = true;
  auto report = [&](const CriterionResult& r) {
    std::printf("%s %2d. %-24s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                ++index, r.name.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
  };
  run_all_criteria(X, report);
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return all ? 0 : 1;
}
