#include "omflow/matroid.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "omflow/errors.hpp"
#include "omflow/rng.hpp"

namespace omflow {

namespace detail {

struct MatroidImpl {
  int n = 0;
  MatroidInfo info;
  std::vector<int> minor_elements;
  virtual ~MatroidImpl() = default;
  virtual int rank(Mask s) const = 0;
};

namespace {

struct UnionFindScratch {
  std::vector<int> parent;
  std::vector<int> compsize;
  std::vector<char> cyclic;
  std::vector<int> touched;

  void ensure(int n) {
    if ((int)parent.size() < n) {
      parent.assign(n, -1);
      compsize.assign(n, 0);
      cyclic.assign(n, 0);
    }
  }

  int activate(int v) {
    if (parent[v] < 0) {
      parent[v] = v;
      compsize[v] = 1;
      cyclic[v] = 0;
      touched.push_back(v);
    }
    return v;
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void merge(int a, int b) {
    if (compsize[a] < compsize[b]) std::swap(a, b);
    parent[b] = a;
    compsize[a] += compsize[b];
    cyclic[a] |= cyclic[b];
  }

  void reset() {
    for (int v : touched) parent[v] = -1;
    touched.clear();
  }
};

struct UniformImpl : MatroidImpl {
  int r;
  UniformImpl(int r_, int n_) : r(r_) {
    n = n_;
    info.kind = MatroidKind::uniform;
    info.uniform_rank = r_;
  }
  int rank(Mask s) const override { return std::min(r, popcount(s)); }
};

struct GraphicImpl : MatroidImpl {
  std::shared_ptr<const MultiGraph> g;
  mutable UnionFindScratch uf;

  explicit GraphicImpl(std::shared_ptr<const MultiGraph> g_) : g(std::move(g_)) {
    n = g->edge_count();
    info.kind = MatroidKind::graphic;
    info.graph = g;
    uf.ensure(g->vertex_count());
  }

  int rank(Mask s) const override {
    int r = 0;
    Mask rest = s;
    while (rest) {
      int e = lowest_element(rest);
      rest &= rest - 1;
      const Edge& ed = g->edge(e);
      if (ed.u == ed.v) {
        uf.activate(ed.u);
        continue;
      }
      int a = uf.find(uf.activate(ed.u));
      int b = uf.find(uf.activate(ed.v));
      if (a != b) {
        uf.merge(a, b);
        ++r;
      }
    }
    uf.reset();
    return r;
  }
};

struct BicircularImpl : MatroidImpl {
  std::shared_ptr<const MultiGraph> g;
  mutable UnionFindScratch uf;

  explicit BicircularImpl(std::shared_ptr<const MultiGraph> g_) : g(std::move(g_)) {
    n = g->edge_count();
    info.kind = MatroidKind::bicircular;
    info.graph = g;
    uf.ensure(g->vertex_count());
  }

  // Rank = sum over components of |V_c| minus one per acyclic component.
  int rank(Mask s) const override {
    Mask rest = s;
    while (rest) {
      int e = lowest_element(rest);
      rest &= rest - 1;
      const Edge& ed = g->edge(e);
      if (ed.u == ed.v) {
        int a = uf.find(uf.activate(ed.u));
        uf.cyclic[a] = 1;
        continue;
      }
      int a = uf.find(uf.activate(ed.u));
      int b = uf.find(uf.activate(ed.v));
      if (a == b) {
        uf.cyclic[a] = 1;
      } else {
        uf.merge(a, b);
      }
    }
    int r = 0;
    for (int v : uf.touched) {
      if (uf.parent[v] == v) r += uf.cyclic[v] ? uf.compsize[v] : uf.compsize[v] - 1;
    }
    uf.reset();
    return r;
  }
};

struct LatticePathImpl : MatroidImpl {
  std::vector<int> left, right;  // interval j = [left[j], right[j]]

  LatticePathImpl(const std::string& upper, const std::string& lower) {
    n = (int)upper.size();
    info.kind = MatroidKind::lattice_path;
    info.upper = upper;
    info.lower = lower;
    for (int i = 0; i < n; ++i) {
      if (upper[i] == 'N') left.push_back(i);
      if (lower[i] == 'N') right.push_back(i);
    }
  }

  // Transversal rank of the interval system; intervals have strictly
  // increasing left and right endpoints, so the ascending greedy matching
  // is maximum.
  int rank(Mask s) const override {
    size_t j = 0;
    int matched = 0;
    Mask rest = s;
    while (rest && j < left.size()) {
      int a = lowest_element(rest);
      rest &= rest - 1;
      while (j < left.size() && right[j] < a) ++j;
      if (j < left.size() && left[j] <= a) {
        ++matched;
        ++j;
      }
    }
    return matched;
  }
};

struct DualImpl : MatroidImpl {
  Matroid base;
  Mask base_full;
  int base_rank;

  explicit DualImpl(const Matroid& m) : base(m) {
    n = m.size();
    base_full = m.full_mask();
    base_rank = m.full_rank();
    info.kind = MatroidKind::dual;
    info.base = std::make_shared<const Matroid>(m);
  }

  int rank(Mask s) const override {
    return popcount(s) + base.rank(base_full & ~s) - base_rank;
  }
};

struct MinorImpl : MatroidImpl {
  Matroid base;
  Mask con;
  int con_rank;

  MinorImpl(const Matroid& m, Mask del, Mask contracted) : base(m), con(contracted) {
    info.kind = MatroidKind::minor;
    info.base = std::make_shared<const Matroid>(m);
    info.deleted = del;
    info.contracted = contracted;
    Mask kept = m.full_mask() & ~(del | contracted);
    while (kept) {
      minor_elements.push_back(lowest_element(kept));
      kept &= kept - 1;
    }
    n = (int)minor_elements.size();
    con_rank = base.rank(con);
  }

  Mask lift(Mask s) const {
    Mask out = 0;
    while (s) {
      int e = lowest_element(s);
      s &= s - 1;
      out |= bit(minor_elements[e]);
    }
    return out;
  }

  int rank(Mask s) const override { return base.rank(lift(s) | con) - con_rank; }
};

struct ExplicitImpl : MatroidImpl {
  ExplicitImpl(int n_, std::vector<Mask> bases) {
    n = n_;
    info.kind = MatroidKind::explicit_bases;
    info.bases = std::move(bases);
  }

  int rank(Mask s) const override {
    int best = 0;
    for (Mask b : info.bases) best = std::max(best, popcount(b & s));
    return best;
  }
};

}  // namespace
}  // namespace detail

Matroid::Matroid(std::shared_ptr<const detail::MatroidImpl> impl) : impl_(std::move(impl)) {
  full_mask_ = mask_below(impl_->n);
  full_rank_ = impl_->rank(full_mask_);
}

Matroid::Matroid() : Matroid(std::make_shared<detail::UniformImpl>(0, 0)) {}

int Matroid::size() const { return impl_->n; }
int Matroid::rank(Mask s) const { return impl_->rank(s & full_mask_); }
const MatroidInfo& Matroid::info() const { return impl_->info; }
const std::vector<int>& Matroid::minor_elements() const { return impl_->minor_elements; }

void Matroid::self_check(std::uint64_t seed, int trials) const {
  invariant(rank(0) == 0, "rank of empty set must be 0");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mask a = rng.next() & full_mask_;
    Mask b = rng.next() & full_mask_;
    int ra = rank(a), rb = rank(b);
    invariant(ra >= 0 && ra <= popcount(a), "rank out of bounds");
    int ru = rank(a | b), ri = rank(a & b);
    invariant(ru >= ra && ru <= ra + popcount(b & ~a), "rank increase out of bounds");
    invariant(ru + ri <= ra + rb, "rank not submodular");
  }
}

Matroid make_uniform(int r, int n) {
  if (n < 0 || n > 64 || r < 0 || r > n) throw InputError("uniform matroid needs 0 <= r <= n <= 64");
  return Matroid(std::make_shared<detail::UniformImpl>(r, n));
}

Matroid make_graphic(const MultiGraph& g) {
  if (g.edge_count() > 64) throw InputError("graphic matroid limited to 64 edges");
  return Matroid(std::make_shared<detail::GraphicImpl>(std::make_shared<const MultiGraph>(g)));
}

Matroid make_bicircular(const MultiGraph& g) {
  if (g.edge_count() > 64) throw InputError("bicircular matroid limited to 64 edges");
  return Matroid(std::make_shared<detail::BicircularImpl>(std::make_shared<const MultiGraph>(g)));
}

Matroid make_lattice_path(const std::string& upper, const std::string& lower) {
  if (upper.size() != lower.size()) throw InputError("lattice path bounds must have equal length");
  if (upper.size() > 64) throw InputError("lattice path matroid limited to 64 steps");
  int nu = 0, nl = 0;
  for (size_t i = 0; i < upper.size(); ++i) {
    char cu = upper[i], cl = lower[i];
    if ((cu != 'N' && cu != 'E') || (cl != 'N' && cl != 'E'))
      throw InputError("lattice path bounds must be strings over {N, E}");
    if (cu == 'N') ++nu;
    if (cl == 'N') ++nl;
    if (nu < nl) throw InputError("upper bound path dips below lower bound path");
  }
  if (nu != nl) throw InputError("lattice path bounds must end at the same point");
  return Matroid(std::make_shared<detail::LatticePathImpl>(upper, lower));
}

Matroid make_explicit_bases(int n, std::vector<Mask> bases) {
  if (n < 0 || n > 64) throw InputError("explicit matroid needs 0 <= n <= 64");
  if (bases.empty()) throw InputError("explicit matroid needs at least one basis");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  int r = popcount(bases.front());
  for (Mask b : bases) {
    if (b & ~mask_below(n)) throw InputError("basis uses elements outside the ground set");
    if (popcount(b) != r) throw InputError("bases must all have the same size");
  }
  return Matroid(std::make_shared<detail::ExplicitImpl>(n, std::move(bases)));
}

Matroid dual(const Matroid& m) {
  if (m.info().kind == MatroidKind::dual) return *m.info().base;
  return Matroid(std::make_shared<detail::DualImpl>(m));
}

Matroid minor(const Matroid& m, Mask del, Mask con) {
  del &= m.full_mask();
  con &= m.full_mask();
  if (del & con) throw InputError("deleted and contracted sets must be disjoint");
  if (m.info().kind == MatroidKind::minor) {
    const detail::MatroidImpl* impl = nullptr;
    // Collapse chains of minors so rank calls stay one hop from the base.
    const Matroid& base = *m.info().base;
    Mask del0 = m.info().deleted, con0 = m.info().contracted;
    Mask ldel = 0, lcon = 0;
    const std::vector<int>& ids = m.minor_elements();
    for (size_t i = 0; i < ids.size(); ++i) {
      if (del & bit((int)i)) ldel |= bit(ids[i]);
      if (con & bit((int)i)) lcon |= bit(ids[i]);
    }
    (void)impl;
    return minor(base, del0 | ldel, con0 | lcon);
  }
  return Matroid(std::make_shared<detail::MinorImpl>(m, del, con));
}

Matroid restriction(const Matroid& m, Mask keep) {
  return minor(m, m.full_mask() & ~keep, 0);
}

bool is_independent(const Matroid& m, Mask s) { return m.rank(s) == popcount(s); }

bool is_circuit(const Matroid& m, Mask c) {
  if (!c) return false;
  int p = popcount(c);
  if (m.rank(c) != p - 1) return false;
  Mask rest = c;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    if (m.rank(c ^ bit(e)) != p - 1) return false;
  }
  return true;
}

Mask closure(const Matroid& m, Mask s) {
  int r = m.rank(s);
  Mask out = s;
  Mask rest = m.full_mask() & ~s;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    if (m.rank(s | bit(e)) == r) out |= bit(e);
  }
  return out;
}

Mask loops(const Matroid& m) {
  Mask out = 0;
  for (int e = 0; e < m.size(); ++e)
    if (m.rank(bit(e)) == 0) out |= bit(e);
  return out;
}

Mask coloops(const Matroid& m) {
  Mask out = 0;
  for (int e = 0; e < m.size(); ++e)
    if (m.rank(m.full_mask() & ~bit(e)) == m.full_rank() - 1) out |= bit(e);
  return out;
}

namespace {

void circuits_rec(const Matroid& m, const std::vector<int>& elems, size_t start, Mask prefix,
                  std::vector<Mask>& out) {
  for (size_t i = start; i < elems.size(); ++i) {
    Mask s = prefix | bit(elems[i]);
    int p = popcount(s);
    if (m.rank(s) == p) {
      circuits_rec(m, elems, i + 1, s, out);
      continue;
    }
    // prefix was independent, so any circuit inside s contains elems[i];
    // s is a circuit exactly when every one-element deletion is independent.
    bool minimal = true;
    Mask probe = s;
    while (probe) {
      int x = lowest_element(probe);
      probe &= probe - 1;
      if (m.rank(s ^ bit(x)) != p - 1) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(s);
  }
}

std::vector<Mask> circuits_in_domain(const Matroid& m, Mask domain) {
  std::vector<int> elems;
  Mask rest = domain;
  while (rest) {
    elems.push_back(lowest_element(rest));
    rest &= rest - 1;
  }
  std::vector<Mask> out;
  circuits_rec(m, elems, 0, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Mask> circuits(const Matroid& m, int cap) {
  if (m.size() > cap) throw ResourceError("circuit enumeration capped at " + std::to_string(cap) + " elements");
  return circuits_in_domain(m, m.full_mask());
}

std::vector<Mask> circuits_within(const Matroid& m, Mask domain) {
  domain &= m.full_mask();
  if (popcount(domain) > 25) throw ResourceError("circuit enumeration domain capped at 25 elements");
  return circuits_in_domain(m, domain);
}

void for_each_independent_set_of_size(const Matroid& m, int target,
                                      const std::function<void(Mask)>& fn) {
  int n = m.size();
  if (target == 0) {
    fn(0);
    return;
  }
  // DFS over ascending-element independent prefixes.
  std::vector<std::pair<int, Mask>> stack;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    auto [next, prefix] = stack.back();
    stack.pop_back();
    int have = popcount(prefix);
    for (int e = next; e < n; ++e) {
      if (have + (n - e) < target) break;
      Mask s = prefix | bit(e);
      if (m.rank(s) != have + 1) continue;
      if (have + 1 == target) {
        fn(s);
      } else {
        stack.push_back({e + 1, s});
      }
    }
  }
}

void for_each_flat_of_corank(const Matroid& m, int k, const std::function<void(Mask)>& fn) {
  if (k < 0 || k > m.full_rank()) throw InputError("corank must lie between 0 and the rank");
  if (k == 0) {
    fn(m.full_mask());
    return;
  }
  int target = m.full_rank() - k;
  std::vector<Mask> seen;
  for_each_independent_set_of_size(m, target, [&](Mask s) { seen.push_back(closure(m, s)); });
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (Mask f : seen) fn(f);
}

std::vector<Mask> flats_of_corank(const Matroid& m, int k) {
  std::vector<Mask> out;
  for_each_flat_of_corank(m, k, [&](Mask f) { out.push_back(f); });
  return out;
}

ColineReport coline_report(const Matroid& m, Mask coline) {
  coline &= m.full_mask();
  if (m.rank(coline) != m.full_rank() - 2 || closure(m, coline) != coline)
    throw InputError("not a flat of corank 2");
  std::vector<std::pair<Mask, Mask>> groups;  // copoint -> class
  Mask rest = m.full_mask() & ~coline;
  while (rest) {
    int x = lowest_element(rest);
    rest &= rest - 1;
    Mask h = closure(m, coline | bit(x));
    bool found = false;
    for (auto& [cop, cls] : groups) {
      if (cop == h) {
        cls |= bit(x);
        found = true;
        break;
      }
    }
    if (!found) groups.push_back({h, bit(x)});
  }
  ColineReport rpt;
  rpt.coline = coline;
  for (auto& [cop, cls] : groups) rpt.classes.push_back(cls);
  std::sort(rpt.classes.begin(), rpt.classes.end(),
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });
  rpt.degree = (int)rpt.classes.size();
  rpt.singular = 0;
  for (Mask c : rpt.classes)
    if (popcount(c) == 1) ++rpt.singular;
  rpt.multiple = rpt.degree - rpt.singular;
  rpt.positive = rpt.singular > rpt.multiple;
  return rpt;
}

SeriesClasses series_classes(const Matroid& m) {
  int n = m.size();
  int r = m.full_rank();
  Mask full = m.full_mask();
  SeriesClasses out;
  out.coloop_mask = coloops(m);
  std::vector<int> rep(n);
  for (int e = 0; e < n; ++e) rep[e] = e;
  std::function<int(int)> find = [&](int e) {
    while (rep[e] != e) {
      rep[e] = rep[rep[e]];
      e = rep[e];
    }
    return e;
  };
  for (int e = 0; e < n; ++e) {
    if (out.coloop_mask & bit(e)) continue;
    for (int f = e + 1; f < n; ++f) {
      if (out.coloop_mask & bit(f)) continue;
      if (find(e) == find(f)) continue;
      // e, f coparallel iff removing both drops the rank by exactly one
      if (m.rank(full & ~(bit(e) | bit(f))) == r - 1) rep[find(f)] = find(e);
    }
  }
  std::map<int, Mask> cls;
  for (int e = 0; e < n; ++e) cls[find(e)] |= bit(e);
  for (auto& [root, mask] : cls) out.classes.push_back(mask);
  std::sort(out.classes.begin(), out.classes.end(),
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });
  return out;
}

namespace {

SimplifyResult simplify_common(const Matroid& m, Mask vanish, const std::vector<Mask>& classes,
                               bool contract) {
  int n = m.size();
  SimplifyResult out;
  out.representative.assign(n, -1);
  Mask removed = vanish;
  for (Mask cls : classes) {
    int rep = lowest_element(cls);
    Mask rest = cls;
    while (rest) {
      int e = lowest_element(rest);
      rest &= rest - 1;
      out.representative[e] = rep;
      if (e != rep) removed |= bit(e);
    }
  }
  out.result = contract ? minor(m, 0, removed) : minor(m, removed, 0);
  // Not minor_elements(): when m is itself a minor the collapsed ids live in
  // the base's ground set.  Survivors are renumbered ascending either way.
  out.element_map.assign(n, -1);
  int idx = 0;
  for (int e = 0; e < n; ++e)
    if (!(removed & bit(e))) out.element_map[e] = idx++;
  return out;
}

}  // namespace

SimplifyResult simplify(const Matroid& m) {
  Mask lp = loops(m);
  int n = m.size();
  std::vector<int> rep(n);
  for (int e = 0; e < n; ++e) rep[e] = e;
  std::function<int(int)> find = [&](int e) {
    while (rep[e] != e) {
      rep[e] = rep[rep[e]];
      e = rep[e];
    }
    return e;
  };
  for (int e = 0; e < n; ++e) {
    if (lp & bit(e)) continue;
    for (int f = e + 1; f < n; ++f) {
      if (lp & bit(f)) continue;
      if (find(e) != find(f) && m.rank(bit(e) | bit(f)) == 1) rep[find(f)] = find(e);
    }
  }
  std::map<int, Mask> cls;
  for (int e = 0; e < n; ++e)
    if (!(lp & bit(e))) cls[find(e)] |= bit(e);
  std::vector<Mask> classes;
  for (auto& [root, mask] : cls) classes.push_back(mask);
  return simplify_common(m, lp, classes, false);
}

SimplifyResult cosimplify(const Matroid& m) {
  SeriesClasses sc = series_classes(m);
  std::vector<Mask> classes;
  for (Mask cls : sc.classes)
    if (!(cls & sc.coloop_mask)) classes.push_back(cls);
  return simplify_common(m, sc.coloop_mask, classes, true);
}

bool is_simple(const Matroid& m) {
  int n = m.size();
  for (int e = 0; e < n; ++e)
    if (m.rank(bit(e)) == 0) return false;
  for (int e = 0; e < n; ++e)
    for (int f = e + 1; f < n; ++f)
      if (m.rank(bit(e) | bit(f)) == 1) return false;
  return true;
}

bool is_cosimple(const Matroid& m) {
  int n = m.size();
  int r = m.full_rank();
  Mask full = m.full_mask();
  for (int e = 0; e < n; ++e)
    if (m.rank(full & ~bit(e)) == r - 1) return false;
  for (int e = 0; e < n; ++e)
    for (int f = e + 1; f < n; ++f)
      if (m.rank(full & ~(bit(e) | bit(f))) == r - 1) return false;
  return true;
}

}  // namespace omflow
