#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omflow/matroid.hpp"

namespace omflow {

enum class BicycleShape { theta, dumbbell, figure_eight };

// A bicycle: connected leafless subgraph with |E| = |V| + 1. Shape follows
// the branch-vertex census: one branch vertex = figure_eight, two without a
// bridge = theta, two with a bridge = dumbbell.
struct Bicycle {
  Mask edges = 0;
  BicycleShape shape = BicycleShape::theta;
};

// Structural circuit enumeration: cycles first, then vertex-sharing pairs
// (theta / figure-eight) and disjoint pairs joined by a path (dumbbell).
// Sorted ascending by edge mask; must match generic circuit enumeration.
std::vector<Bicycle> bicircular_circuits(const MultiGraph& g, int cap = 24);
std::vector<Bicycle> bicircular_circuits(const Matroid& b, int cap = 24);

struct SymdiffResult {
  std::optional<std::pair<Mask, Mask>> pair;
  bool via_construction = false;
};

// Maximal-path construction for a circuit pair with symmetric difference 2,
// falling back to exhaustive search over circuit pairs. Requires min degree
// >= 3 (loops count 2).
SymdiffResult symdiff2_circuit_pair(const MultiGraph& g);

struct DcStructure {
  Mask double_circuit = 0;
  std::vector<Mask> partition;            // circuit partition classes
  std::vector<int> distinguished;         // vertices of degree >= 3 in g[D]
  std::vector<Mask> subdivision_classes;  // edge masks inside D
  std::vector<std::string> violations;
};

// Validates the graph structure of a double circuit of a bicircular
// matroid: no leaves, at most 4 distinguished vertices, every subdivision
// class inside one partition class. Violations are reported, not thrown.
DcStructure dc_structure(const Matroid& b, Mask d);

// Uniform type (r, n) of B(g) if it is uniform. B(g) is uniform exactly
// when g has no bicycle on at most rank(B(g)) edges.
std::optional<std::pair<int, int>> bicircular_uniform_type(const MultiGraph& g);

bool uniform_type_in_matthews_list(int r, int n);

struct UniformFind {
  MultiGraph graph;
  int uniform_rank = 0;
  int uniform_size = 0;
  bool in_expected_list = false;
};

struct UniformClassificationReport {
  std::vector<UniformFind> uniform_finds;  // proper uniform types (r < n)
  long long free_count = 0;                // graphs with B(G) free (U_{n,n})
  long long graphs_checked = 0;
  bool all_in_expected_list = true;
};

// Sweeps all multigraphs up to max_vertices (multiplicity <= 3, loops <= 2
// per vertex, optional edge cap) and classifies every uniform B(G) found.
UniformClassificationReport check_uniform_classification(int max_vertices, int max_edges = -1);

struct CosimplicityCheck {
  bool min_degree_ge3 = false;
  bool b_cosimple = false;
  bool agree = false;
};

CosimplicityCheck bicircular_cosimplicity(const MultiGraph& g);

}  // namespace omflow
