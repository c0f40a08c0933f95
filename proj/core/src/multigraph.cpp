#include "omflow/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <sstream>

#include "omflow/errors.hpp"

namespace omflow {

MultiGraph::MultiGraph(int vertex_count, std::vector<std::pair<int, int>> edges) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  degree_.assign(vertex_count, 0);
  incident_.assign(vertex_count, {});
  edges_.reserve(edges.size());
  for (size_t id = 0; id < edges.size(); ++id) {
    auto [u, v] = edges[id];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw InputError("edge endpoint out of range");
    edges_.push_back(Edge{u, v});
    degree_[u] += (u == v) ? 2 : 1;
    if (u != v) degree_[v] += 1;
    incident_[u].push_back(static_cast<int>(id));
    if (u != v) incident_[v].push_back(static_cast<int>(id));
  }
}

int MultiGraph::min_degree() const {
  int d = vertex_count_ == 0 ? 0 : degree_[0];
  for (int v = 1; v < vertex_count_; ++v) d = std::min(d, degree_[v]);
  return d;
}

bool MultiGraph::has_loop() const {
  for (const Edge& e : edges_)
    if (e.u == e.v) return true;
  return false;
}

bool MultiGraph::has_parallel_pair() const {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.u == e.v) continue;
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) return true;
  }
  return false;
}

MultiGraph parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) throw ParseError("edge list line " + std::to_string(lineno) + ": expected two vertex ids");
    std::string rest;
    if (ls >> rest) throw ParseError("edge list line " + std::to_string(lineno) + ": trailing data '" + rest + "'");
    if (u < 0 || v < 0) throw ParseError("edge list line " + std::to_string(lineno) + ": negative vertex id");
    if (u > 1000000 || v > 1000000) throw ParseError("edge list line " + std::to_string(lineno) + ": vertex id too large");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_vertex = std::max(max_vertex, static_cast<int>(std::max(u, v)));
  }
  return MultiGraph(max_vertex + 1, std::move(edges));
}

MultiGraph parse_graph6(const std::string& input) {
  std::string s = input;
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s.erase(0, header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.empty()) throw ParseError("graph6: empty record");
  for (size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126)
      throw ParseError("graph6: byte " + std::to_string(i) + " value " + std::to_string(c) + " out of range");
  }
  size_t pos = 0;
  long long n;
  if (s[0] != '~') {
    n = s[0] - 63;
    pos = 1;
  } else if (s.size() >= 4 && s[1] != '~') {
    n = (static_cast<long long>(s[1] - 63) << 12) | (static_cast<long long>(s[2] - 63) << 6) | (s[3] - 63);
    pos = 4;
  } else if (s.size() >= 8) {
    n = 0;
    for (int i = 2; i < 8; ++i) n = (n << 6) | (s[i] - 63);
    pos = 8;
  } else {
    throw ParseError("graph6: truncated size field");
  }
  if (n > 1000000) throw ResourceError("graph6: vertex count " + std::to_string(n) + " exceeds supported size");
  long long bits = n * (n - 1) / 2;
  size_t need = static_cast<size_t>((bits + 5) / 6);
  if (s.size() - pos != need)
    throw ParseError("graph6: expected " + std::to_string(need) + " data bytes, got " +
                     std::to_string(s.size() - pos));
  std::vector<std::pair<int, int>> edges;
  long long t = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++t) {
      int bit = (s[pos + t / 6] - 63) >> (5 - t % 6) & 1;
      if (bit) edges.emplace_back(i, j);
    }
  }
  for (long long p = bits; p < static_cast<long long>(need) * 6; ++p) {
    if ((s[pos + p / 6] - 63) >> (5 - p % 6) & 1)
      throw ParseError("graph6: nonzero padding bit at data bit " + std::to_string(p));
  }
  return MultiGraph(static_cast<int>(n), std::move(edges));
}

std::optional<int> girth(const MultiGraph& g) {
  if (g.has_loop()) return 1;
  if (g.has_parallel_pair()) return 2;
  int n = g.vertex_count();
  // Simple graph now; deduplicate adjacency.
  std::vector<std::vector<int>> adj(n);
  for (int id = 0; id < g.edge_count(); ++id) {
    adj[g.edge(id).u].push_back(g.edge(id).v);
    adj[g.edge(id).v].push_back(g.edge(id).u);
  }
  int best = -1;
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (best > 0 && 2 * dist[u] >= best) continue;  // cannot improve from here
      for (int w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          int cand = dist[u] + dist[w] + 1;
          if (best < 0 || cand < best) best = cand;
        }
      }
    }
    if (best == 3) break;
  }
  if (best < 0) return std::nullopt;
  return best;
}

namespace {

// Smallest-id incident edge that extends a simple path at endpoint w.
int path_extension(const MultiGraph& g, int w, const std::vector<char>& on_path,
                   const std::vector<char>& edge_used) {
  for (int e : g.incident(w)) {
    if (edge_used[e] || g.is_loop(e)) continue;
    if (!on_path[g.other_end(e, w)]) return e;
  }
  return -1;
}

}  // namespace

GraphPath maximal_path(const MultiGraph& g, int seed_edge) {
  if (seed_edge < 0 || seed_edge >= g.edge_count()) throw InputError("maximal_path: seed edge out of range");
  if (g.is_loop(seed_edge)) throw InputError("maximal_path: seed edge is a loop");
  std::deque<int> verts{g.edge(seed_edge).u, g.edge(seed_edge).v};
  std::deque<int> edges{seed_edge};
  std::vector<char> on_path(g.vertex_count(), 0), edge_used(g.edge_count(), 0);
  on_path[verts[0]] = on_path[verts[1]] = 1;
  edge_used[seed_edge] = 1;
  while (true) {
    int e = path_extension(g, verts.back(), on_path, edge_used);
    if (e >= 0) {
      int w = g.other_end(e, verts.back());
      verts.push_back(w);
      edges.push_back(e);
      on_path[w] = 1;
      edge_used[e] = 1;
      continue;
    }
    e = path_extension(g, verts.front(), on_path, edge_used);
    if (e >= 0) {
      int w = g.other_end(e, verts.front());
      verts.push_front(w);
      edges.push_front(e);
      on_path[w] = 1;
      edge_used[e] = 1;
      continue;
    }
    break;
  }
  GraphPath p;
  p.vertices.assign(verts.begin(), verts.end());
  p.edges.assign(edges.begin(), edges.end());
  return p;
}

SubdivisionStructure subdivision_structure(const MultiGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) throw InputError("subdivision_structure: graph has a degree-1 vertex");
  SubdivisionStructure out;
  out.class_of_edge.assign(g.edge_count(), -1);
  std::vector<char> visited(g.edge_count(), 0);

  // Walks down a degree-2 chain; returns the terminal vertex, or -1 when the
  // walk closed a bare cycle.
  auto walk = [&](int w, int via, std::deque<int>& chain, bool front) -> int {
    while (g.degree(w) == 2) {
      int f = -1;
      for (int cand : g.incident(w))
        if (cand != via) f = cand;
      if (f < 0) return -1;  // lone loop vertex handled by caller
      if (visited[f]) return -1;
      visited[f] = 1;
      if (front)
        chain.push_front(f);
      else
        chain.push_back(f);
      w = g.other_end(f, w);
      via = f;
    }
    return w;
  };

  std::vector<std::pair<int, int>> class_ends;  // terminal vertices; (-1, rep) for cycle classes
  for (int e = 0; e < g.edge_count(); ++e) {
    if (visited[e]) continue;
    visited[e] = 1;
    std::deque<int> chain{e};
    bool cycle;
    int t1 = -1, t2 = -1;
    if (g.is_loop(e)) {
      int w = g.edge(e).u;
      cycle = g.degree(w) == 2;
      if (!cycle) t1 = t2 = w;
    } else {
      t2 = walk(g.edge(e).v, e, chain, false);
      cycle = t2 < 0;
      if (!cycle) {
        t1 = walk(g.edge(e).u, e, chain, true);
        invariant(t1 >= 0, "open chain closed into a cycle");
      }
    }
    int cls = static_cast<int>(out.classes.size());
    out.classes.emplace_back(chain.begin(), chain.end());
    out.is_cycle_class.push_back(cycle);
    for (int id : chain) out.class_of_edge[id] = cls;
    if (cycle) {
      int rep = g.edge(e).u;
      for (int id : chain) rep = std::min({rep, g.edge(id).u, g.edge(id).v});
      class_ends.emplace_back(-1, rep);
    } else {
      class_ends.emplace_back(t1, t2);
    }
  }

  // Suppressed graph: branch vertices first (ascending), then cycle reps.
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 3) keep.push_back(v);
  for (auto& [a, rep] : class_ends)
    if (a == -1) keep.push_back(rep);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> to_new(g.vertex_count(), -1);
  for (size_t i = 0; i < keep.size(); ++i) to_new[keep[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> sedges;
  for (auto& [a, b] : class_ends) {
    if (a == -1)
      sedges.emplace_back(to_new[b], to_new[b]);
    else
      sedges.emplace_back(std::min(to_new[a], to_new[b]), std::max(to_new[a], to_new[b]));
  }
  out.suppressed = MultiGraph(static_cast<int>(keep.size()), std::move(sedges));
  out.suppressed_vertex_orig = std::move(keep);
  return out;
}

EdgeSubgraph edge_subgraph(const MultiGraph& g, const std::vector<int>& edge_ids) {
  EdgeSubgraph out;
  std::vector<int> verts;
  for (int id : edge_ids) {
    verts.push_back(g.edge(id).u);
    verts.push_back(g.edge(id).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> to_new(g.vertex_count(), -1);
  for (size_t i = 0; i < verts.size(); ++i) to_new[verts[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (int id : edge_ids) edges.emplace_back(to_new[g.edge(id).u], to_new[g.edge(id).v]);
  out.graph = MultiGraph(static_cast<int>(verts.size()), std::move(edges));
  out.orig_vertex = std::move(verts);
  out.orig_edge = edge_ids;
  return out;
}

namespace {

MultiGraph make_petersen() {
  // Kneser graph K(5,2): vertices are the 2-subsets of {0..4}, adjacent when
  // disjoint.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) edges.emplace_back(i, j);
    }
  return MultiGraph(10, std::move(edges));
}

MultiGraph make_dodecahedron() {
  // Generalized Petersen graph GP(10,2).
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 10; ++i) edges.emplace_back(i, (i + 1) % 10);
  for (int i = 0; i < 10; ++i) edges.emplace_back(i, 10 + i);
  for (int i = 0; i < 10; ++i) edges.emplace_back(10 + i, 10 + (i + 2) % 10);
  return MultiGraph(20, std::move(edges));
}

}  // namespace

MultiGraph named_graph(const std::string& name) {
  std::string base = name;
  int k = -1;
  size_t open = name.find_first_of("(:");
  if (open != std::string::npos) {
    base = name.substr(0, open);
    std::string arg = name.substr(open + 1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
    try {
      size_t used = 0;
      k = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw InputError("named_graph: bad parameter in '" + name + "'");
    }
    if (k < 0) throw InputError("named_graph: parameter must be nonnegative in '" + name + "'");
  }
  if (base == "petersen") return make_petersen();
  if (base == "dodecahedron") return make_dodecahedron();
  if (base == "k4") {
    return MultiGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  }
  if (base == "prism") {
    return MultiGraph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
  }
  if (base == "doubled_triangle") {
    return MultiGraph(3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}, {1, 2}});
  }
  if (base == "theta" || base == "parallel") {
    if (k < 0) throw InputError("named_graph: '" + base + "' needs a parameter, e.g. " + base + "(3)");
    std::vector<std::pair<int, int>> edges(k, {0, 1});
    return MultiGraph(2, std::move(edges));
  }
  if (base == "bouquet") {
    if (k < 0) throw InputError("named_graph: 'bouquet' needs a parameter, e.g. bouquet(2)");
    std::vector<std::pair<int, int>> edges(k, {0, 0});
    return MultiGraph(1, std::move(edges));
  }
  throw InputError("named_graph: unknown name '" + name + "'");
}

namespace detail {

std::vector<std::vector<int>> slot_permutations(int v, int pair_slots) {
  std::vector<std::vector<int>> pair_index(v, std::vector<int>(v, -1));
  int s = 0;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) pair_index[i][j] = pair_index[j][i] = s++;
  std::vector<int> perm(v);
  for (int i = 0; i < v; ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<int> map(pair_slots + v);
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) map[pair_index[i][j]] = pair_index[perm[i]][perm[j]];
    for (int i = 0; i < v; ++i) map[pair_slots + i] = pair_slots + perm[i];
    out.push_back(std::move(map));
  }
  return out;
}

}  // namespace detail

}  // namespace omflow
