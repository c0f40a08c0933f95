#pragma once

#include <optional>
#include <vector>

#include "omflow/matroid.hpp"

namespace omflow {

// Witness bijection maps elements of a to elements of b; backtracking over
// circuit-structure-compatible assignments.
std::optional<std::vector<int>> is_isomorphic(const Matroid& a, const Matroid& b, int cap = 12);

struct MinorWitness {
  Mask del = 0, con = 0;
};

// First (delete, contract) pair whose minor is isomorphic to M(K4), in a
// fixed deterministic search order over independent contract-sets and
// 6-element supports.
std::optional<MinorWitness> has_M_K4_minor(const Matroid& m, int cap = 14);

const Matroid& m_k4();

}  // namespace omflow
