#pragma once

#include <string>
#include <vector>

#include "toeplitz/common.hpp"

namespace toeplitz {

// The seed data (p, p', q, w) together with derived hole bookkeeping for the
// period word w. Valid instances satisfy the structural assumptions checked
// by violations(); the radius-0 symbol-map assumption is checked separately
// by flip_witness.
struct Params {
  int p = 5;
  int p_prime = 2;
  int q = 2;
  std::string w = "1_0_0";

  // Derived: positions of holes inside w (increasing), and for each residue
  // r the rank of the hole at r (or -1 when w[r] is a letter).
  std::vector<int> hole_offsets;
  std::vector<int> hole_rank;

  int anchor() const { return hole_offsets.front(); }

  static std::vector<std::string> violations(int p, int p_prime, int q,
                                             const std::string& w);
  // Throws Err::AssumptionViolated listing every failed assumption.
  static Params make(int p, int p_prime, int q, const std::string& w);
  static Params defaults() { return make(5, 2, 2, "1_0_0"); }

  friend bool operator==(const Params& a, const Params& b) {
    return a.p == b.p && a.p_prime == b.p_prime && a.q == b.q && a.w == b.w;
  }
};

}  // namespace toeplitz
