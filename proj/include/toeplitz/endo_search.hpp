#pragma once

#include <vector>

#include "toeplitz/blockmap.hpp"
#include "toeplitz/common.hpp"
#include "toeplitz/lifting_group.hpp"
#include "toeplitz/substrate.hpp"

namespace toeplitz {

// Brute-force oracle: every table over language(2R+1) that survives the
// depth-L closure check, found by constraint propagation along a reference
// window. Deterministic sorted output.
std::vector<Rule> enumerate_endomorphisms(Subshift& X, int radius, int depth,
                                          int radius_budget = 2);

struct Classified {
  Rule rule;
  Rational value;
};

// Decomposes every rule; the values must be pairwise distinct group members.
std::vector<Classified> classify(Subshift& X, const std::vector<Rule>& rules);

}  // namespace toeplitz
