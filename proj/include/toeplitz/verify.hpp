#pragma once

#include <functional>
#include <string>
#include <vector>

#include "toeplitz/substrate.hpp"

namespace toeplitz {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The full verification battery over the default parameters. Each criterion
// is exact; tolerances are pinned in the implementation.
std::vector<std::string> criterion_names();
CriterionResult run_criterion(Subshift& X, const std::string& name);
std::vector<CriterionResult> run_all_criteria(
    Subshift& X, const std::function<void(const CriterionResult&)>& on_result);

}  // namespace toeplitz
