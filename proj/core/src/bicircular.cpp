#include "omflow/bicircular.hpp"

#include <algorithm>
#include <functional>

#include "omflow/double_circuit.hpp"
#include "omflow/errors.hpp"

namespace omflow {

namespace {

// Local relabeling of the (at most 64) vertices touched by edges, so cycle
// vertex sets fit in one word.
struct VertexView {
  std::vector<int> to_local;
  std::vector<int> to_orig;
  bool ok = true;

  explicit VertexView(const MultiGraph& g) {
    to_local.assign(g.vertex_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      for (int v : {ed.u, ed.v}) {
        if (to_local[v] < 0) {
          if (to_orig.size() >= 64) {
            ok = false;
            return;
          }
          to_local[v] = (int)to_orig.size();
          to_orig.push_back(v);
        }
      }
    }
  }

  std::uint64_t vbit(int orig) const { return std::uint64_t{1} << to_local[orig]; }
};

struct CycleRec {
  Mask edges = 0;
  std::uint64_t verts = 0;
  int ne = 0;
};

void enumerate_cycles(const MultiGraph& g, const VertexView& view, int max_len, long long cap,
                      std::vector<CycleRec>& out) {
  auto add = [&](Mask e, std::uint64_t v, int ne) {
    out.push_back({e, v, ne});
    if ((long long)out.size() > cap) throw ResourceError("cycle enumeration cap exceeded");
  };
  int m = g.edge_count();
  if (max_len >= 1)
    for (int e = 0; e < m; ++e)
      if (g.is_loop(e)) add(bit(e), view.vbit(g.edge(e).u), 1);
  if (max_len >= 2)
    for (int e = 0; e < m; ++e) {
      if (g.is_loop(e)) continue;
      const Edge& a = g.edge(e);
      for (int f = e + 1; f < m; ++f) {
        if (g.is_loop(f)) continue;
        const Edge& b = g.edge(f);
        if ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u))
          add(bit(e) | bit(f), view.vbit(a.u) | view.vbit(a.v), 2);
      }
    }
  if (max_len < 3) return;
  int nv = g.vertex_count();
  std::vector<char> onpath(nv, 0);
  std::vector<int> path, path_edges;
  // Simple cycles anchored at their minimum vertex s; direction is fixed by
  // requiring the second path vertex to be smaller than the closing one.
  std::function<void(int, int)> grow = [&](int s, int w) {
    for (int ed : g.incident(w)) {
      if (g.is_loop(ed)) continue;
      int x = g.other_end(ed, w);
      if (x == s) {
        if ((int)path.size() >= 3 && path[1] < w) {
          Mask em = bit(ed);
          std::uint64_t vm = 0;
          for (int pe : path_edges) em |= bit(pe);
          for (int pv : path) vm |= view.vbit(pv);
          add(em, vm, (int)path.size());
        }
        continue;
      }
      if (x < s || onpath[x]) continue;
      if ((int)path.size() >= max_len) continue;
      onpath[x] = 1;
      path.push_back(x);
      path_edges.push_back(ed);
      grow(s, x);
      path_edges.pop_back();
      path.pop_back();
      onpath[x] = 0;
    }
  };
  for (int s = 0; s < nv; ++s) {
    onpath[s] = 1;
    path.assign(1, s);
    path_edges.clear();
    grow(s, s);
    onpath[s] = 0;
  }
}

// All simple connecting paths (as edge masks) from V(a) to V(b), internally
// disjoint from both; emit may return false to stop early.
void connecting_paths(const MultiGraph& g, const VertexView& view, const CycleRec& a,
                      const CycleRec& b, int max_len,
                      const std::function<bool(Mask)>& emit) {
  std::vector<char> used(g.vertex_count(), 0);
  bool stop = false;
  std::function<void(int, Mask, int)> go = [&](int w, Mask pedges, int len) {
    if (stop || len >= max_len) return;
    for (int ed : g.incident(w)) {
      if (stop) return;
      if (g.is_loop(ed) || (pedges & bit(ed))) continue;
      int x = g.other_end(ed, w);
      std::uint64_t xb = view.vbit(x);
      if (xb & a.verts) continue;
      if (xb & b.verts) {
        if (!emit(pedges | bit(ed))) stop = true;
        continue;
      }
      if (used[x]) continue;
      used[x] = 1;
      go(x, pedges | bit(ed), len + 1);
      used[x] = 0;
    }
  };
  std::uint64_t av = a.verts;
  while (av && !stop) {
    int lv = std::countr_zero(av);
    av &= av - 1;
    go(view.to_orig[lv], 0, 0);
  }
}

int component_count(const MultiGraph& g, const VertexView& view, Mask edges, std::uint64_t verts) {
  int parent[64];
  std::uint64_t vm = verts;
  while (vm) {
    int v = std::countr_zero(vm);
    vm &= vm - 1;
    parent[v] = v;
  }
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  Mask rest = edges;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    const Edge& ed = g.edge(e);
    int a = find(std::countr_zero(view.vbit(ed.u)));
    int b = find(std::countr_zero(view.vbit(ed.v)));
    if (a != b) parent[a] = b;
  }
  int comps = 0;
  vm = verts;
  while (vm) {
    int v = std::countr_zero(vm);
    vm &= vm - 1;
    if (find(v) == v) ++comps;
  }
  return comps;
}

BicycleShape classify_bicycle(const MultiGraph& g, const VertexView& view, Mask edges) {
  int deg[64] = {0};
  std::uint64_t verts = 0;
  Mask rest = edges;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    const Edge& ed = g.edge(e);
    verts |= view.vbit(ed.u) | view.vbit(ed.v);
    deg[std::countr_zero(view.vbit(ed.u))] += 1;
    deg[std::countr_zero(view.vbit(ed.v))] += 1;
  }
  int branch = 0;
  std::uint64_t vm = verts;
  while (vm) {
    int v = std::countr_zero(vm);
    vm &= vm - 1;
    if (deg[v] >= 3) ++branch;
  }
  if (branch == 1) return BicycleShape::figure_eight;
  int base = component_count(g, view, edges, verts);
  rest = edges;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    if (g.is_loop(e)) continue;
    if (component_count(g, view, edges & ~bit(e), verts) > base) return BicycleShape::dumbbell;
  }
  return BicycleShape::theta;
}

}  // namespace

std::vector<Bicycle> bicircular_circuits(const MultiGraph& g, int cap) {
  if (g.edge_count() > cap)
    throw ResourceError("bicycle enumeration capped at " + std::to_string(cap) + " edges");
  VertexView view(g);
  if (!view.ok) throw ResourceError("bicycle enumeration limited to 64 touched vertices");
  std::vector<CycleRec> cycles;
  enumerate_cycles(g, view, g.edge_count(), 2000000, cycles);
  std::vector<Mask> masks;
  for (size_t i = 0; i < cycles.size(); ++i) {
    for (size_t j = i + 1; j < cycles.size(); ++j) {
      const CycleRec& a = cycles[i];
      const CycleRec& b = cycles[j];
      std::uint64_t sv = a.verts & b.verts;
      if (sv) {
        // union is a bicycle iff shared vertices exceed shared edges by one
        if (std::popcount(sv) == popcount(a.edges & b.edges) + 1)
          masks.push_back(a.edges | b.edges);
      } else {
        connecting_paths(g, view, a, b, g.edge_count(), [&](Mask p) {
          masks.push_back(a.edges | b.edges | p);
          return true;
        });
      }
    }
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Bicycle> out;
  out.reserve(masks.size());
  for (Mask mk : masks) out.push_back({mk, classify_bicycle(g, view, mk)});
  return out;
}

std::vector<Bicycle> bicircular_circuits(const Matroid& b, int cap) {
  if (b.info().kind != MatroidKind::bicircular)
    throw InputError("structural circuit enumeration needs a bicircular matroid");
  return bicircular_circuits(*b.info().graph, cap);
}

SymdiffResult symdiff2_circuit_pair(const MultiGraph& g) {
  if (g.edge_count() == 0) throw InputError("graph has no edges");
  if (g.min_degree() < 3) throw InputError("minimum degree must be at least 3 (loops count 2)");
  Matroid b = make_bicircular(g);
  SymdiffResult out;
  int seed = -1;
  for (int e = 0; e < g.edge_count() && seed < 0; ++e)
    if (!g.is_loop(e)) seed = e;
  if (seed >= 0) {
    GraphPath p = maximal_path(g, seed);
    int v1 = p.vertices.front();
    int vk = p.vertices.back();
    Mask pmask = 0;
    for (int e : p.edges) pmask |= bit(e);
    for (int ek : g.incident(vk)) {
      if (pmask & bit(ek)) continue;
      Mask ep = pmask | bit(ek);
      std::vector<int> cands;
      for (int c : g.incident(v1))
        if (!(ep & bit(c))) cands.push_back(c);
      for (size_t i = 0; i < cands.size(); ++i) {
        for (size_t j = i + 1; j < cands.size(); ++j) {
          Mask c1 = ep | bit(cands[i]);
          Mask c2 = ep | bit(cands[j]);
          if (is_circuit(b, c1) && is_circuit(b, c2)) {
            out.pair = {c1, c2};
            out.via_construction = true;
            return out;
          }
        }
      }
    }
  }
  std::vector<Bicycle> circs = bicircular_circuits(g);
  for (size_t i = 0; i < circs.size(); ++i)
    for (size_t j = i + 1; j < circs.size(); ++j)
      if (popcount(circs[i].edges ^ circs[j].edges) == 2) {
        out.pair = {circs[i].edges, circs[j].edges};
        out.via_construction = false;
        return out;
      }
  return out;
}

DcStructure dc_structure(const Matroid& b, Mask d) {
  if (b.info().kind != MatroidKind::bicircular)
    throw InputError("double circuit structure needs a bicircular matroid");
  const MultiGraph& g = *b.info().graph;
  d &= b.full_mask();
  DcStructure out;
  out.double_circuit = d;
  out.partition = circuit_partition(b, d);  // throws unless D is a double circuit

  std::vector<int> eids;
  Mask rest = d;
  while (rest) {
    eids.push_back(lowest_element(rest));
    rest &= rest - 1;
  }
  EdgeSubgraph sub = edge_subgraph(g, eids);
  const MultiGraph& h = sub.graph;
  bool leaf = false;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (h.degree(v) >= 3) out.distinguished.push_back(sub.orig_vertex[v]);
    if (h.degree(v) == 1) {
      out.violations.push_back("leaf at vertex " + std::to_string(sub.orig_vertex[v]));
      leaf = true;
    }
  }
  if ((int)out.distinguished.size() > 4)
    out.violations.push_back("more than 4 distinguished vertices");
  if (!leaf) {
    SubdivisionStructure ss = subdivision_structure(h);
    for (const std::vector<int>& cls : ss.classes) {
      Mask mk = 0;
      for (int e : cls) mk |= bit(sub.orig_edge[e]);
      out.subdivision_classes.push_back(mk);
    }
    std::sort(out.subdivision_classes.begin(), out.subdivision_classes.end(),
              [](Mask a, Mask b2) { return lowest_element(a) < lowest_element(b2); });
    for (Mask cls : out.subdivision_classes) {
      bool inside = false;
      for (Mask pc : out.partition)
        if ((cls & ~pc) == 0) inside = true;
      if (!inside)
        out.violations.push_back("subdivision class " + std::to_string(cls) +
                                 " crosses partition classes");
    }
  }
  return out;
}

namespace {

bool has_bicycle_with_at_most(const MultiGraph& g, int k) {
  if (k < 2) return false;
  int m = g.edge_count();
  // cheap structural screens for the smallest shapes
  for (int e = 0; e < m; ++e) {
    if (!g.is_loop(e)) continue;
    for (int f = e + 1; f < m; ++f)
      if (g.is_loop(f) && g.edge(e).u == g.edge(f).u) return true;  // two loops, one vertex
  }
  if (k >= 3) {
    for (int e = 0; e < m; ++e) {
      if (g.is_loop(e)) continue;
      const Edge& ed = g.edge(e);
      bool lu = false, lv = false;
      for (int f = 0; f < m; ++f)
        if (g.is_loop(f)) {
          if (g.edge(f).u == ed.u) lu = true;
          if (g.edge(f).u == ed.v) lv = true;
        }
      if (lu && lv) return true;  // loops joined by an edge
      int par = 0;
      for (int f = 0; f < m; ++f) {
        if (f == e || g.is_loop(f)) continue;
        const Edge& fd = g.edge(f);
        if ((fd.u == ed.u && fd.v == ed.v) || (fd.u == ed.v && fd.v == ed.u)) ++par;
      }
      if (par >= 2) return true;                 // three parallel edges
      if (par >= 1 && (lu || lv)) return true;   // parallel pair plus a loop
    }
  }
  VertexView view(g);
  if (!view.ok) throw ResourceError("uniformity check limited to 64 touched vertices");
  std::vector<CycleRec> cycles;
  enumerate_cycles(g, view, k - 1, 2000000, cycles);
  for (size_t i = 0; i < cycles.size(); ++i) {
    for (size_t j = i + 1; j < cycles.size(); ++j) {
      const CycleRec& a = cycles[i];
      const CycleRec& b = cycles[j];
      std::uint64_t sv = a.verts & b.verts;
      if (sv) {
        if (a.ne + b.ne - popcount(a.edges & b.edges) > k) continue;
        if (std::popcount(sv) == popcount(a.edges & b.edges) + 1) return true;
      } else {
        int room = k - a.ne - b.ne;
        if (room < 1) continue;
        bool found = false;
        connecting_paths(g, view, a, b, room, [&](Mask) {
          found = true;
          return false;
        });
        if (found) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::optional<std::pair<int, int>> bicircular_uniform_type(const MultiGraph& g) {
  int n = g.edge_count();
  if (n == 0) return std::make_pair(0, 0);
  Matroid b = make_bicircular(g);
  int r = b.full_rank();
  if (r == n) return std::make_pair(n, n);
  // uniform iff no circuit fits inside an r-subset
  if (has_bicycle_with_at_most(g, r)) return std::nullopt;
  return std::make_pair(r, n);
}

bool uniform_type_in_matthews_list(int r, int n) {
  if (r == 1 || r == 2) return true;
  if (r == n || r == n - 1) return true;
  if (r == 3 && (n == 5 || n == 6)) return true;
  if (r == 4 && n == 6) return true;
  return false;
}

UniformClassificationReport check_uniform_classification(int max_vertices, int max_edges) {
  if (max_vertices < 0 || max_vertices > 6)
    throw InputError("classification sweep capped at 6 vertices");
  if (max_edges < 0)
    max_edges = 3 * max_vertices * (max_vertices - 1) / 2 + 2 * max_vertices;
  UniformClassificationReport rpt;
  for_each_multigraph(max_vertices, 3, 2, max_edges, [&](const MultiGraph& g) {
    ++rpt.graphs_checked;
    std::optional<std::pair<int, int>> t = bicircular_uniform_type(g);
    if (!t) return;
    bool in = uniform_type_in_matthews_list(t->first, t->second);
    if (!in) rpt.all_in_expected_list = false;
    if (t->first < t->second) {
      UniformFind f;
      f.graph = g;
      f.uniform_rank = t->first;
      f.uniform_size = t->second;
      f.in_expected_list = in;
      rpt.uniform_finds.push_back(f);
    } else {
      ++rpt.free_count;
    }
  });
  return rpt;
}

CosimplicityCheck bicircular_cosimplicity(const MultiGraph& g) {
  CosimplicityCheck out;
  out.min_degree_ge3 = g.vertex_count() == 0 || g.min_degree() >= 3;
  out.b_cosimple = is_cosimple(make_bicircular(g));
  out.agree = out.min_degree_ge3 == out.b_cosimple;
  return out;
}

}  // namespace omflow
