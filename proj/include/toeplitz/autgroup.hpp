#pragma once

#include <utility>
#include <vector>

#include "toeplitz/blockmap.hpp"
#include "toeplitz/common.hpp"
#include "toeplitz/lifting_group.hpp"
#include "toeplitz/substrate.hpp"

namespace toeplitz {

// The unlifted endomorphism: conjugation through the hole layer. Built by
// evaluation over language words, then minimized.
Rule unlift(Subshift& X, const Rule& f);

// Inverse direction: f = unlift(h) composed with the shift by -k, 0 <= k < p.
// The returned h is minimized; the identity is verified before returning.
std::pair<i64, Rule> lift(Subshift& X, const Rule& f);

// sigma_power(j, k) = unlift^j of the shift by k, minimized and cached.
const Rule& sigma_power(Subshift& X, int level, i64 exponent);
inline const Rule& sigma_rule(Subshift& X, int level) {
  return sigma_power(X, level, 1);
}

struct Decomposition {
  std::vector<i64> level_shifts;  // shift exponent extracted per level
  i64 residual_shift = 0;
  int residual_level = 0;
  Rational value;
  CoeffVector normal;  // balanced normal form of value
};

// Iterates lift until the residual is a pure shift power; folds the extracted
// shifts into the rational value (the shift itself decomposes to 1) and
// verifies the result by reconstruction.
Decomposition decompose(Subshift& X, const Rule& f);

// Product of sigma_power(t, k_t) over the coefficient vector, minimized.
Rule reconstruct(Subshift& X, const CoeffVector& c);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace toeplitz
