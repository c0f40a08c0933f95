#pragma once

#include <string>
#include <vector>

#include "omflow/lattice.hpp"
#include "omflow/matroid.hpp"
#include "omflow/rng.hpp"

namespace omflow::test {

// Minimal dependent sets straight from the definition; n <= 16.
std::vector<Mask> oracle_circuits(const Matroid& m);

// All bases of the lattice path matroid by monotone-path enumeration.
std::vector<Mask> oracle_lpm_bases(const std::string& upper, const std::string& lower);
int oracle_rank_from_bases(const std::vector<Mask>& bases, Mask s);

// Second Hermite normal form implementation (plain gcd elimination); the
// canonical form is unique, so it must match hermite_normal_form exactly.
std::vector<IntVector> naive_hnf(std::vector<IntVector> rows, int dim);

// Box search over coefficient vectors in [-bound, bound]^k.
bool brute_lattice_member(const std::vector<IntVector>& gens, const IntVector& x, int bound);

// graph6 encoding of a simple graph (no header).
std::string graph6_encode(const MultiGraph& g);

// Exact rank-function equality, all 2^n subsets; n <= 20.
bool same_rank_function(const Matroid& a, const Matroid& b);

}  // namespace omflow::test
