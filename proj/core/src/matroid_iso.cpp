#include "omflow/matroid_iso.hpp"

#include <algorithm>
#include <unordered_set>

#include "omflow/errors.hpp"

namespace omflow {

namespace {

std::vector<std::vector<int>> element_profiles(int n, const std::vector<Mask>& circs) {
  std::vector<std::vector<int>> prof(n);
  for (Mask c : circs) {
    int sz = popcount(c);
    Mask rest = c;
    while (rest) {
      prof[lowest_element(rest)].push_back(sz);
      rest &= rest - 1;
    }
  }
  for (auto& p : prof) std::sort(p.begin(), p.end());
  return prof;
}

struct IsoSearch {
  int n;
  const std::vector<Mask>& ca;
  std::unordered_set<Mask> cb_set;
  std::vector<std::vector<int>> cands;      // per a-element, compatible b-elements
  std::vector<std::vector<int>> circs_of;   // a-element -> indices into ca
  std::vector<int> assigned_count;          // per a-circuit
  std::vector<int> order;                   // a-elements, scarce candidates first
  std::vector<int> map_ab, map_ba;

  bool extend(size_t pos) {
    if (pos == order.size()) return true;
    int e = order[pos];
    for (int f : cands[e]) {
      if (map_ba[f] >= 0) continue;
      map_ab[e] = f;
      map_ba[f] = e;
      bool ok = true;
      for (int ci : circs_of[e]) {
        if (++assigned_count[ci] == popcount(ca[ci])) {
          Mask image = 0;
          Mask rest = ca[ci];
          while (rest) {
            image |= bit(map_ab[lowest_element(rest)]);
            rest &= rest - 1;
          }
          if (!cb_set.count(image)) ok = false;
        }
      }
      if (ok && extend(pos + 1)) return true;
      for (int ci : circs_of[e]) --assigned_count[ci];
      map_ab[e] = -1;
      map_ba[f] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Matroid& a, const Matroid& b, int cap) {
  if (a.size() > cap || b.size() > cap)
    throw ResourceError("isomorphism search capped at " + std::to_string(cap) + " elements");
  if (a.size() != b.size() || a.full_rank() != b.full_rank()) return std::nullopt;
  int n = a.size();
  std::vector<Mask> ca = circuits(a, cap);
  std::vector<Mask> cb = circuits(b, cap);
  if (ca.size() != cb.size()) return std::nullopt;
  {
    std::vector<int> sa, sb;
    for (Mask c : ca) sa.push_back(popcount(c));
    for (Mask c : cb) sb.push_back(popcount(c));
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  auto pa = element_profiles(n, ca);
  auto pb = element_profiles(n, cb);
  {
    auto ma = pa, mb = pb;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) return std::nullopt;
  }
  IsoSearch s{n, ca};
  for (Mask c : cb) s.cb_set.insert(c);
  s.cands.resize(n);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (pa[e] == pb[f]) s.cands[e].push_back(f);
  s.circs_of.resize(n);
  for (size_t i = 0; i < ca.size(); ++i) {
    Mask rest = ca[i];
    while (rest) {
      s.circs_of[lowest_element(rest)].push_back((int)i);
      rest &= rest - 1;
    }
  }
  s.assigned_count.assign(ca.size(), 0);
  for (int e = 0; e < n; ++e) s.order.push_back(e);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](int x, int y) { return s.cands[x].size() < s.cands[y].size(); });
  s.map_ab.assign(n, -1);
  s.map_ba.assign(n, -1);
  if (!s.extend(0)) return std::nullopt;
  return s.map_ab;
}

const Matroid& m_k4() {
  static const Matroid m = make_graphic(named_graph("k4"));
  return m;
}

namespace {

// Fingerprint of M(K4) inside a rank-3 contraction: 6 rank-1 singles,
// 15 rank-2 pairs, exactly 4 dependent triples pairwise meeting in one
// element. Candidates passing this are confirmed by full isomorphism.
bool k4_fingerprint(const Matroid& m, Mask t, int rt, const int y[6]) {
  for (int i = 0; i < 6; ++i)
    if (m.rank(t | bit(y[i])) != rt + 1) return false;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (m.rank(t | bit(y[i]) | bit(y[j])) != rt + 2) return false;
  std::vector<Mask> triangles;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) {
        Mask tri = bit(y[i]) | bit(y[j]) | bit(y[k]);
        if (m.rank(t | tri) == rt + 2) {
          triangles.push_back(tri);
          if (triangles.size() > 4) return false;
        }
      }
  if (triangles.size() != 4) return false;
  for (size_t i = 0; i < triangles.size(); ++i)
    for (size_t j = i + 1; j < triangles.size(); ++j)
      if (popcount(triangles[i] & triangles[j]) != 1) return false;
  return true;
}

}  // namespace

std::optional<MinorWitness> has_M_K4_minor(const Matroid& m, int cap) {
  if (m.size() > cap)
    throw ResourceError("M(K4) minor search capped at " + std::to_string(cap) + " elements");
  int r = m.full_rank();
  int n = m.size();
  if (r < 3 || n < 6) return std::nullopt;
  std::optional<MinorWitness> hit;
  for_each_independent_set_of_size(m, r - 3, [&](Mask t) {
    if (hit) return;
    int rt = popcount(t);
    std::vector<int> rest;
    for (int e = 0; e < n; ++e)
      if (!(t & bit(e))) rest.push_back(e);
    int k = (int)rest.size();
    int y[6];
    std::function<void(int, int)> pick = [&](int start, int depth) {
      if (hit) return;
      if (depth == 6) {
        Mask ym = 0;
        for (int i = 0; i < 6; ++i) ym |= bit(y[i]);
        if (m.rank(t | ym) != r) return;
        if (!k4_fingerprint(m, t, rt, y)) return;
        Matroid cand = minor(m, m.full_mask() & ~t & ~ym, t);
        if (is_isomorphic(cand, m_k4(), 6)) hit = MinorWitness{m.full_mask() & ~t & ~ym, t};
        return;
      }
      for (int i = start; i <= k - (6 - depth); ++i) {
        y[depth] = rest[i];
        pick(i + 1, depth + 1);
        if (hit) return;
      }
    };
    pick(0, 0);
  });
  return hit;
}

}  // namespace omflow
