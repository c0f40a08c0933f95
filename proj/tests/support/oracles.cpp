#include "support/oracles.hpp"

#include <algorithm>
#include <cstdlib>

#include "omflow/errors.hpp"

namespace omflow::test {

std::vector<Mask> oracle_circuits(const Matroid& m) {
  int n = m.size();
  if (n > 16) throw ResourceError("oracle circuits capped at 16 elements");
  std::vector<Mask> out;
  Mask full = m.full_mask();
  for (Mask s = 1; s <= full; ++s) {
    if (m.rank(s) >= popcount(s)) continue;
    bool minimal = true;
    for (Mask t = s; t && minimal; t &= t - 1) {
      Mask sub = s ^ (t & -t);
      if (m.rank(sub) < popcount(sub)) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  return out;
}

std::vector<Mask> oracle_lpm_bases(const std::string& upper, const std::string& lower) {
  int n = static_cast<int>(upper.size());
  std::vector<int> hi(n + 1, 0), lo(n + 1, 0);
  for (int j = 0; j < n; ++j) {
    hi[j + 1] = hi[j] + (upper[j] == 'N');
    lo[j + 1] = lo[j] + (lower[j] == 'N');
  }
  std::vector<Mask> out;
  // DFS over monotone paths staying between the bounds
  struct Frame {
    int j, k;
    Mask chosen;
  };
  std::vector<Frame> frames{{0, 0, 0}};
  while (!frames.empty()) {
    Frame f = frames.back();
    frames.pop_back();
    if (f.j == n) {
      out.push_back(f.chosen);
      continue;
    }
    if (f.k >= lo[f.j + 1]) frames.push_back({f.j + 1, f.k, f.chosen});
    if (f.k + 1 <= hi[f.j + 1]) frames.push_back({f.j + 1, f.k + 1, f.chosen | bit(f.j)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

int oracle_rank_from_bases(const std::vector<Mask>& bases, Mask s) {
  int best = 0;
  for (Mask b : bases) best = std::max(best, popcount(b & s));
  return best;
}

namespace {

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<IntVector> naive_hnf(std::vector<IntVector> rows, int dim) {
  for (auto& r : rows)
    if (static_cast<int>(r.size()) != dim) throw InputError("generator has wrong dimension");
  int r = 0;
  for (int col = 0; col < dim; ++col) {
    for (;;) {
      int nz = -1, count = 0;
      for (int i = r; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][col] != 0) {
          ++count;
          if (nz < 0 || abs(rows[i][col]) < abs(rows[nz][col])) nz = i;
        }
      if (count == 0) {
        nz = -1;
        break;
      }
      if (count == 1) {
        std::swap(rows[r], rows[nz]);
        break;
      }
      for (int i = r; i < static_cast<int>(rows.size()); ++i) {
        if (i == nz || rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[nz][col];
        for (int j = 0; j < dim; ++j) rows[i][j] -= q * rows[nz][j];
      }
    }
    if (rows.size() > static_cast<size_t>(r) && rows[r][col] != 0) {
      if (rows[r][col] < 0)
        for (int j = 0; j < dim; ++j) rows[r][j] = -rows[r][j];
      for (int i = 0; i < r; ++i) {
        if (rows[i][col] == 0) continue;
        Int q = fdiv(rows[i][col], rows[r][col]);
        if (q == 0) continue;
        for (int j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

bool brute_lattice_member(const std::vector<IntVector>& gens, const IntVector& x, int bound) {
  int k = static_cast<int>(gens.size());
  int dim = static_cast<int>(x.size());
  std::vector<int> coef(k, -bound);
  for (;;) {
    IntVector acc(dim, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < dim; ++j) acc[j] += Int(coef[i]) * gens[i][j];
    if (acc == x) return true;
    int p = 0;
    while (p < k && coef[p] == bound) coef[p++] = -bound;
    if (p == k) return false;
    ++coef[p];
  }
}

std::string graph6_encode(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n > 62) throw InputError("graph6 encoder capped at 62 vertices");
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.is_loop(e)) throw InputError("graph6 cannot encode loops");
    int u = g.edge(e).u, v = g.edge(e).v;
    if (adj[u][v]) throw InputError("graph6 cannot encode parallel edges");
    adj[u][v] = adj[v][u] = 1;
  }
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | adj[i][j];
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        bits = 0;
      }
    }
  if (bits) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

bool same_rank_function(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  if (a.size() > 20) throw ResourceError("rank table compare capped at 20 elements");
  Mask full = a.full_mask();
  for (Mask s = 0; s <= full; ++s) {
    if (a.rank(s) != b.rank(s)) return false;
    if (s == full) break;
  }
  return true;
}

}  // namespace omflow::test
