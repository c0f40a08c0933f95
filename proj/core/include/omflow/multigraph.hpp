#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace omflow {

struct Edge {
  int u, v;
};

// Undirected multigraph: parallel edges and loops allowed, edges identified
// by their index in construction order.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[id]; }
  bool is_loop(int id) const { return edges_[id].u == edges_[id].v; }
  // For a non-loop edge, the endpoint other than w.
  int other_end(int id, int w) const { return edges_[id].u == w ? edges_[id].v : edges_[id].u; }

  // Loops contribute 2.
  int degree(int v) const { return degree_[v]; }
  int min_degree() const;
  bool has_loop() const;
  bool has_parallel_pair() const;

  // Incident edge ids in ascending order; a loop appears once.
  const std::vector<int>& incident(int v) const { return incident_[v]; }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> incident_;
};

// "u v" per line, '#' comments, blank lines ignored; vertices are 0-based and
// the vertex count is one past the largest endpoint mentioned.
MultiGraph parse_edge_list(const std::string& text);

// One graph6 record (simple graphs).  Accepts an optional ">>graph6<<"
// header, enforces byte range, exact length, and zero padding bits.
MultiGraph parse_graph6(const std::string& line);

// Shortest cycle length: 1 with a loop, 2 with a parallel pair, otherwise
// BFS from every vertex; nullopt for forests.
std::optional<int> girth(const MultiGraph& g);

struct GraphPath {
  std::vector<int> vertices;  // k+1 vertices for k edges
  std::vector<int> edges;
};

// Grows a simple path from seed_edge until neither endpoint can reach a
// vertex off the path, always taking the smallest-id usable edge.  Every
// neighbor of each endpoint then lies on the path.  seed_edge must not be a
// loop.
GraphPath maximal_path(const MultiGraph& g, int seed_edge);

// Decomposition of a graph with no degree-1 vertices into subdivision
// classes: maximal paths whose internal vertices have degree 2, plus bare
// cycle components (flagged), and the suppressed graph with one edge per
// class.
struct SubdivisionStructure {
  std::vector<std::vector<int>> classes;     // edge ids, in path order
  std::vector<bool> is_cycle_class;
  std::vector<int> class_of_edge;
  MultiGraph suppressed;                     // edge i <-> class i
  std::vector<int> suppressed_vertex_orig;   // suppressed vertex -> input vertex
};

SubdivisionStructure subdivision_structure(const MultiGraph& g);

// Subgraph on a set of edges, vertices relabeled to 0..k-1 in ascending
// order of the original ids they came from.
struct EdgeSubgraph {
  MultiGraph graph;
  std::vector<int> orig_vertex;  // new vertex -> original vertex
  std::vector<int> orig_edge;    // new edge -> original edge
};

EdgeSubgraph edge_subgraph(const MultiGraph& g, const std::vector<int>& edge_ids);

// Construction by name: petersen, dodecahedron, k4, prism, doubled_triangle,
// theta(k), bouquet(k), parallel(k).  Parameterized names accept "theta(3)"
// or "theta:3".
MultiGraph named_graph(const std::string& name);

namespace detail {
std::vector<std::vector<int>> slot_permutations(int v, int pair_slots);
}

// Calls fn once per isomorphism class of multigraph with at most max_vertices
// vertices, per-pair multiplicity <= max_multiplicity, per-vertex loop count
// <= max_loops, and at most max_edges edges total.  Graphs are emitted as
// canonical (lex-minimal) representatives; no graph has an isolated vertex,
// so each class appears for exactly one vertex count.
template <typename F>
void for_each_multigraph(int max_vertices, int max_multiplicity, int max_loops, int max_edges, F&& fn);

}  // namespace omflow

#include "omflow/multigraph_sweep.inl"
