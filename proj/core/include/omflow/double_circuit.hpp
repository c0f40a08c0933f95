#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "omflow/matroid.hpp"

namespace omflow {

// A double circuit D has rank |D|-2 and no coloops inside D; its circuits
// are exactly the complements of the partition classes (Dress-Lovasz).
struct DoubleCircuitReport {
  Mask d = 0;
  std::vector<Mask> classes;  // ascending by smallest element
  int degree = 0;
  int singular = 0;
  int multiple = 0;
  bool positive = false;
};

bool is_double_circuit(const Matroid& m, Mask d);

// Classes of the circuit partition; throws InputError unless D is a double
// circuit, InvariantError if the complements fail to partition D.
std::vector<Mask> circuit_partition(const Matroid& m, Mask d);

DoubleCircuitReport double_circuit_report(const Matroid& m, Mask d);

enum class DcRoute { dual_coline, direct };

// dual_coline: complements of colines of the dual (n <= 32);
// direct: circuit pair unions filtered by rank (n <= 20).
void for_each_double_circuit(const Matroid& m,
                             const std::function<void(const DoubleCircuitReport&)>& fn,
                             DcRoute route = DcRoute::dual_coline);
std::vector<DoubleCircuitReport> enumerate_double_circuits(const Matroid& m,
                                                           DcRoute route = DcRoute::dual_coline);

// Positive colines of m, computed through the duality bridge.
std::vector<ColineReport> positive_colines(const Matroid& m);

struct SeriesToUniform {
  std::vector<Mask> classes;
  int uniform_rank = 0;  // k - 2
  int uniform_size = 0;  // k
};

// Contracting all but one representative per class of the restriction to D
// must give U_{k-2,k}; verified exhaustively, panics otherwise.
SeriesToUniform series_to_uniform(const Matroid& m, Mask d);

DoubleCircuitReport symdiff_pair_to_double_circuit(const Matroid& m, Mask c1, Mask c2);
std::pair<Mask, Mask> double_circuit_to_symdiff_pair(const Matroid& m,
                                                     const DoubleCircuitReport& report);

enum class FlowableHypothesis { none, even_one_singular, odd_two_singular };

FlowableHypothesis flowable_hypothesis(const DoubleCircuitReport& report);

}  // namespace omflow
