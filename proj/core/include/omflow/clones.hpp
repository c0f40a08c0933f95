#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "omflow/matroid.hpp"

namespace omflow {

// e and f are clones when swapping them maps the circuit family to itself.
bool are_clones(const Matroid& m, int e, int f, int cap = 20);
std::vector<std::pair<int, int>> clone_pairs(const Matroid& m, int cap = 20);

// Ordering e_1..e_n such that each e_i (i >= 2) has a clone in the
// restriction to {e_1..e_i}; found by backtracking deletion from the top.
std::optional<std::vector<int>> clone_reduction_order(const Matroid& m, int cap = 16);

// The ordering characterization checked directly: an ordering exists iff
// every restriction with >= 2 elements has a clone pair (clones survive
// deletion).  Restrictions are deduplicated by exact relabeled rank table.
bool is_clone_reducible_exhaustive(const Matroid& m, int cap = 10);

}  // namespace omflow
