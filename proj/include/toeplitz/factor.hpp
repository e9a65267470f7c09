#pragma once

#include "toeplitz/blockmap.hpp"
#include "toeplitz/common.hpp"
#include "toeplitz/substrate.hpp"

namespace toeplitz {

// Minimal r such that every language word of length r+1 occurs in x only at
// positions of a single residue class mod p.
int right_radius(Subshift& X);

// The residue c mod p^level aligning y with the level skeleton: wherever the
// shifted skeleton carries a letter, y must agree. Exactly one alignment must
// survive; several -> WindowTooShort, none -> PhaseMismatch.
Phase phase_of(Subshift& X, const PartialWindow& y, int level);

struct DetectionConstant {
  int m = 0;
  i64 window = 0;  // verification window size
};
// Minimal m such that, over a stabilized sample, a cell belongs to the
// k-skeleton iff it starts a run of m equal symbols spaced k apart.
DetectionConstant detection_constant(Subshift& X, i64 k, i64 m_cap = 0);

// The constant c with phase(f(y)) = phase(y) + c mod p^level, read off from
// the image of a long window of x; two samples must agree.
Phase induced_shift(Subshift& X, const Rule& f, int level);

}  // namespace toeplitz
