#include "omflow/oriented.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <unordered_set>

#include "omflow/errors.hpp"
#include "omflow/matroid_iso.hpp"
#include "omflow/rng.hpp"

namespace omflow {

SignedVector negate(SignedVector v) {
  std::swap(v.pos, v.neg);
  return v;
}

SignedVector canonical_signed(SignedVector v) {
  Mask s = v.support();
  if (s && (v.neg >> lowest_element(s)) & 1) return negate(v);
  return v;
}

namespace {

std::vector<int> mask_elements(Mask s) {
  std::vector<int> out;
  for (Mask t = s; t; t &= t - 1) out.push_back(lowest_element(t));
  return out;
}

// ---- arithmetic mod p = 2^61 - 1, used to screen subset ranks cheaply

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulp(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kP);
}

std::uint64_t powp(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulp(r, a);
    a = mulp(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invp(std::uint64_t a) { return powp(a, kP - 2); }

std::uint64_t residue(const Rat& x) {
  std::uint64_t num = mpz_fdiv_ui(x.get_num().get_mpz_t(), kP);
  std::uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), kP);
  if (den == 0) throw InputError("realization denominator collides with the screening modulus");
  return mulp(num, invp(den));
}

struct ModMatrix {
  int rows = 0, cols = 0;
  std::vector<std::uint64_t> a;  // row-major
};

ModMatrix reduce_matrix(const RationalMatrix& m) {
  ModMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.a.resize(static_cast<size_t>(out.rows) * out.cols);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out.a[static_cast<size_t>(r) * out.cols + c] = residue(m.at(r, c));
  return out;
}

int rank_modp(const ModMatrix& m, Mask colmask) {
  std::vector<int> cols = mask_elements(colmask);
  int nc = static_cast<int>(cols.size());
  if (nc == 0 || m.rows == 0) return 0;
  std::vector<std::uint64_t> w(static_cast<size_t>(m.rows) * nc);
  for (int r = 0; r < m.rows; ++r)
    for (int j = 0; j < nc; ++j) w[static_cast<size_t>(r) * nc + j] = m.a[static_cast<size_t>(r) * m.cols + cols[j]];
  int rk = 0;
  for (int j = 0; j < nc && rk < m.rows; ++j) {
    int piv = -1;
    for (int i = rk; i < m.rows; ++i)
      if (w[static_cast<size_t>(i) * nc + j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk)
      for (int c = j; c < nc; ++c) std::swap(w[static_cast<size_t>(piv) * nc + c], w[static_cast<size_t>(rk) * nc + c]);
    std::uint64_t inv = invp(w[static_cast<size_t>(rk) * nc + j]);
    for (int i = rk + 1; i < m.rows; ++i) {
      std::uint64_t f = w[static_cast<size_t>(i) * nc + j];
      if (!f) continue;
      f = mulp(f, inv);
      for (int c = j; c < nc; ++c) {
        std::uint64_t sub = mulp(f, w[static_cast<size_t>(rk) * nc + c]);
        std::uint64_t& cell = w[static_cast<size_t>(i) * nc + c];
        cell = cell >= sub ? cell - sub : cell + kP - sub;
      }
    }
    ++rk;
  }
  return rk;
}

int exact_rank_of(const RationalMatrix& a, Mask s) {
  return rational_rank(a.columns(mask_elements(s)));
}

// The column matroid must agree with expected on subset ranks.  Up to 16
// elements every subset is screened mod p, with an exact recheck whenever
// the screen comes up short; beyond that, full rank and all expected
// circuits are checked exactly plus 4096 pseudo-random subsets.
void check_realizes(const RationalMatrix& a, const Matroid& expected) {
  int n = expected.size();
  if (a.cols() != n) throw InputError("realization has the wrong number of columns");
  Mask full = mask_below(n);
  auto compare = [&](const ModMatrix& mm, Mask s) {
    int er = expected.rank(s);
    int mr = rank_modp(mm, s);
    if (mr == er) return;
    if (mr > er) throw GenericityError("subset rank exceeds the expected matroid");
    if (exact_rank_of(a, s) != er) throw GenericityError("subset rank falls below the expected matroid");
  };
  if (n <= 16) {
    ModMatrix mm = reduce_matrix(a);
    for (Mask s = 1; s <= full; ++s) compare(mm, s);
  } else if (n <= 20) {
    if (exact_rank_of(a, full) != expected.full_rank()) throw GenericityError("full rank falls below the expected matroid");
    for (Mask c : circuits(expected, 20))
      if (exact_rank_of(a, c) != popcount(c) - 1) throw GenericityError("expected circuit is not a circuit of the realization");
    ModMatrix mm = reduce_matrix(a);
    Rng rng(0x9e3779b97f4a7c15ull);
    for (int t = 0; t < 4096; ++t) compare(mm, rng.next() & full);
  } else {
    throw ResourceError("realization check is capped at 20 elements");
  }
}

SignedVector sign_circuit(const RationalMatrix& a, Mask c) {
  std::vector<int> idx = mask_elements(c);
  std::vector<Rat> x = full_support_null_vector(a.columns(idx));
  SignedVector v;
  for (size_t i = 0; i < idx.size(); ++i)
    (sgn(x[i]) > 0 ? v.pos : v.neg) |= bit(idx[i]);
  return canonical_signed(v);
}

OrientedMatroid realize_with_pattern(int rows, int n, const std::vector<std::vector<int>>& support,
                                     const Matroid& expected, std::uint64_t seed) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    RationalMatrix a(rows, n);
    for (int j = 0; j < n; ++j)
      for (int r : support[j]) {
        Int v(static_cast<long>(rng.range(1, std::int64_t{1} << 30)));
        if (rng.coin()) v = -v;
        a.at(r, j) = Rat(v);
      }
    try {
      return orient_from_realization(a, expected);
    } catch (const GenericityError&) {
    }
  }
  throw GenericityError("8 consecutive genericity failures");
}

}  // namespace

OrientedMatroid orient_from_realization(const RationalMatrix& a,
                                        const std::optional<Matroid>& expected, int circuit_cap) {
  int n = a.cols();
  if (n > 64) throw InputError("at most 64 columns");
  OrientedMatroid o;
  if (expected) {
    check_realizes(a, *expected);
    o.underlying = *expected;
  } else {
    if (n > 14) throw ResourceError("column matroid construction is capped at 14 elements");
    int r = rational_rank(a);
    std::vector<Mask> bases;
    Mask full = mask_below(n);
    for (Mask s = 0; s <= full; ++s)
      if (popcount(s) == r && exact_rank_of(a, s) == r) bases.push_back(s);
    o.underlying = make_explicit_bases(n, std::move(bases));
  }
  o.realization = a;
  for (Mask c : circuits(o.underlying, circuit_cap)) {
    try {
      o.circuits.push_back(sign_circuit(a, c));
    } catch (const InvariantError&) {
      if (expected) throw GenericityError("degenerate null space on a circuit");
      throw;
    }
  }
  std::sort(o.circuits.begin(), o.circuits.end());
  return o;
}

OrientedMatroid realize_uniform(int r, int n, std::uint64_t seed) {
  if (r < 0 || r > n) throw InputError("uniform rank out of range");
  std::vector<int> all(r);
  for (int i = 0; i < r; ++i) all[i] = i;
  std::vector<std::vector<int>> support(n, all);
  return realize_with_pattern(r, n, support, make_uniform(r, n), seed);
}

OrientedMatroid realize_bicircular(const MultiGraph& g, std::uint64_t seed) {
  if (g.edge_count() > 20) throw ResourceError("bicircular realization is capped at 20 edges");
  std::vector<std::vector<int>> support(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    support[e].push_back(g.edge(e).u);
    if (!g.is_loop(e)) support[e].push_back(g.edge(e).v);
  }
  return realize_with_pattern(g.vertex_count(), g.edge_count(), support, make_bicircular(g), seed);
}

OrientedMatroid realize_lattice_path(const std::string& upper, const std::string& lower,
                                     std::uint64_t seed) {
  Matroid m = make_lattice_path(upper, lower);
  int n = m.size();
  if (n > 20) throw ResourceError("lattice path realization is capped at 20 elements");
  std::vector<int> left, right;
  for (int j = 0; j < n; ++j) {
    if (upper[j] == 'N') left.push_back(j);
    if (lower[j] == 'N') right.push_back(j);
  }
  int r = static_cast<int>(left.size());
  std::vector<std::vector<int>> support(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < r; ++i)
      if (left[i] <= j && j <= right[i]) support[j].push_back(i);
  return realize_with_pattern(r, n, support, m, seed);
}

OrientedMatroid realize_graphic(const MultiGraph& g) {
  RationalMatrix a(g.vertex_count(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    if (!g.is_loop(e)) {
      a.at(g.edge(e).u, e) = 1;
      a.at(g.edge(e).v, e) = -1;
    }
  return orient_from_realization(a, make_graphic(g));
}

OrientedMatroid reorient(const OrientedMatroid& o, Mask s) {
  auto flip = [&](SignedVector v) {
    Mask p = (v.pos & ~s) | (v.neg & s);
    Mask q = (v.neg & ~s) | (v.pos & s);
    return canonical_signed(SignedVector{p, q});
  };
  OrientedMatroid out;
  out.underlying = o.underlying;
  for (const SignedVector& c : o.circuits) out.circuits.push_back(flip(c));
  std::sort(out.circuits.begin(), out.circuits.end());
  if (o.realization) {
    RationalMatrix a = *o.realization;
    for (Mask t = s; t; t &= t - 1) {
      int j = lowest_element(t);
      if (j >= a.cols()) break;
      for (int r = 0; r < a.rows(); ++r) a.at(r, j) = -a.at(r, j);
    }
    out.realization = std::move(a);
  }
  if (o.cocircuit_hint) {
    std::vector<SignedVector> hint;
    for (const SignedVector& c : *o.cocircuit_hint) hint.push_back(flip(c));
    std::sort(hint.begin(), hint.end());
    out.cocircuit_hint = std::move(hint);
  }
  return out;
}

std::vector<SignedVector> signed_cocircuits(const OrientedMatroid& o) {
  if (o.cocircuit_hint) return *o.cocircuit_hint;
  if (!o.realization) throw InputError("cocircuits need a realization or a dual orientation");
  const RationalMatrix& a = *o.realization;
  const Matroid& m = o.underlying;
  int n = m.size();
  std::vector<SignedVector> out;
  for_each_flat_of_corank(m, 1, [&](Mask h) {
    Mask basis = 0;
    int rk = 0;
    for (Mask t = h; t; t &= t - 1) {
      int e = lowest_element(t);
      if (m.rank(basis | bit(e)) > rk) {
        basis |= bit(e);
        ++rk;
      }
    }
    int c = lowest_element(m.full_mask() & ~h);
    std::vector<int> idx = mask_elements(basis | bit(c));
    std::vector<Rat> rhs(idx.size());
    for (size_t k = 0; k < idx.size(); ++k) rhs[k] = idx[k] == c ? 1 : 0;
    std::vector<Rat> y = solve_left(a.columns(idx), rhs);
    SignedVector v;
    for (int e = 0; e < n; ++e) {
      Rat s = 0;
      for (int r = 0; r < a.rows(); ++r) s += y[r] * a.at(r, e);
      int sg = sgn(s);
      invariant(((h >> e) & 1) == (sg == 0 ? 1 : 0), "cocircuit functional does not vanish exactly on its copoint");
      if (sg > 0) v.pos |= bit(e);
      if (sg < 0) v.neg |= bit(e);
    }
    out.push_back(canonical_signed(v));
  });
  std::sort(out.begin(), out.end());
  return out;
}

OrientedMatroid dual_orientation(const OrientedMatroid& o) {
  OrientedMatroid d;
  d.underlying = dual(o.underlying);
  d.circuits = signed_cocircuits(o);
  d.cocircuit_hint = o.circuits;
  return d;
}

namespace {

IntVector signed_to_vector(const SignedVector& v, int n) {
  IntVector x(n);
  for (int e = 0; e < n; ++e) x[e] = v.sign(e);
  return x;
}

IntegerLattice lattice_from(const std::vector<SignedVector>& vs, int n) {
  std::vector<IntVector> gens;
  gens.reserve(vs.size());
  for (const SignedVector& v : vs) gens.push_back(signed_to_vector(v, n));
  return IntegerLattice(n, std::move(gens));
}

}  // namespace

IntegerLattice flow_lattice(const OrientedMatroid& o) { return lattice_from(o.circuits, o.size()); }

IntegerLattice coflow_lattice(const OrientedMatroid& o) {
  return lattice_from(signed_cocircuits(o), o.size());
}

std::optional<FlowVector> small_support_flow(const OrientedMatroid& o, int max_support) {
  if (max_support < 1 || max_support > 2) throw InputError("max_support must be 1 or 2");
  int n = o.size();
  IntegerLattice lat = flow_lattice(o);
  for (int i = 0; i < n; ++i) {
    IntVector t(n);
    t[i] = 1;
    if (auto c = lat.contains(t)) return FlowVector{t, *c};
  }
  if (max_support == 2)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int s : {1, -1}) {
          IntVector t(n);
          t[i] = 1;
          t[j] = s;
          if (auto c = lat.contains(t)) return FlowVector{t, *c};
        }
  return std::nullopt;
}

FlowVector flow_from_double_circuit(const OrientedMatroid& o, const DoubleCircuitReport& report) {
  FlowableHypothesis hyp = flowable_hypothesis(report);
  if (hyp == FlowableHypothesis::none)
    throw InputError("double circuit does not satisfy the flowable hypothesis");
  int n = o.size();
  std::vector<SignedVector> inside;
  for (const SignedVector& c : o.circuits)
    if (!(c.support() & ~report.d)) inside.push_back(c);
  IntegerLattice lat = lattice_from(inside, n);
  std::vector<int> singles;
  for (Mask cl : report.classes)
    if (popcount(cl) == 1) singles.push_back(lowest_element(cl));
  if (hyp == FlowableHypothesis::even_one_singular) {
    for (int s : singles) {
      IntVector t(n);
      t[s] = 1;
      if (auto c = lat.contains(t)) return FlowVector{t, *c};
    }
  } else {
    for (size_t i = 0; i < singles.size(); ++i)
      for (size_t j = i + 1; j < singles.size(); ++j)
        for (int sg : {1, -1}) {
          IntVector t(n);
          t[singles[i]] = 1;
          t[singles[j]] = sg;
          if (auto c = lat.contains(t)) return FlowVector{t, *c};
        }
  }
  throw InvariantError("flowable double circuit yielded no certified flow");
}

namespace {

using Family = std::vector<SignedVector>;

// Circuits of the contraction: drop the coordinate, keep minimal supports.
Family contract_family(const Family& fam, int e) {
  Mask b = bit(e);
  Family tmp;
  for (SignedVector c : fam) {
    c.pos &= ~b;
    c.neg &= ~b;
    if (c.support()) tmp.push_back(canonical_signed(c));
  }
  std::sort(tmp.begin(), tmp.end(), [](const SignedVector& x, const SignedVector& y) {
    int px = popcount(x.support()), py = popcount(y.support());
    if (px != py) return px < py;
    return x < y;
  });
  tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
  Family out;
  for (const SignedVector& c : tmp) {
    bool dominated = false;
    for (const SignedVector& k : out)
      if (!(k.support() & ~c.support()) && k.support() != c.support()) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CoGspSearch {
  int n = 0;
  Mask full = 0;
  GspCaps caps;
  GspCertificate cert;
  std::unordered_set<std::string> seen;
  bool use_dedup = true;
  bool done = false;

  void run(const Family& fam) {
    cert.verdict = true;
    rec(0, 0, 0, fam, 0);
  }

  void rec(int e, Mask del, Mask con, const Family& fam, int removals) {
    if (done) return;
    if (fam.empty()) return;  // every leaf below has a coloop
    if (e == n) {
      leaf(del, con, fam);
      return;
    }
    Mask covered = 0;
    for (const SignedVector& c : fam) covered |= c.support();
    Mask b = bit(e);
    if (!(covered & b)) {
      // e would be a coloop if kept; deleting and contracting coincide
      if (caps.max_removals >= 0 && removals + 1 > caps.max_removals) return;
      rec(e + 1, del | b, con, fam, removals + 1);
      return;
    }
    rec(e + 1, del, con, fam, removals);
    if (done) return;
    if (caps.max_removals >= 0 && removals + 1 > caps.max_removals) return;
    Family df;
    for (const SignedVector& c : fam)
      if (!(c.support() & b)) df.push_back(c);
    rec(e + 1, del | b, con, df, removals + 1);
    if (done) return;
    rec(e + 1, del, con | b, contract_family(fam, e), removals + 1);
  }

  bool cosimple_leaf(Mask ground, const Family& fam) const {
    Mask covered = 0;
    for (const SignedVector& c : fam) covered |= c.support();
    if (ground & ~covered) return false;  // coloop
    // with no coloops, e and f are in series iff they meet the same circuits
    int k = static_cast<int>(fam.size());
    int words = (k + 63) / 64;
    std::vector<std::uint64_t> inc(static_cast<size_t>(n) * words, 0);
    for (int i = 0; i < k; ++i)
      for (Mask t = fam[i].support(); t; t &= t - 1)
        inc[static_cast<size_t>(lowest_element(t)) * words + i / 64] |= std::uint64_t{1} << (i % 64);
    std::vector<int> elems = mask_elements(ground);
    for (size_t x = 0; x < elems.size(); ++x)
      for (size_t y = x + 1; y < elems.size(); ++y) {
        bool equal = true;
        for (int w = 0; w < words; ++w)
          if (inc[static_cast<size_t>(elems[x]) * words + w] != inc[static_cast<size_t>(elems[y]) * words + w]) {
            equal = false;
            break;
          }
        if (equal) return false;  // series pair
      }
    return true;
  }

  void leaf(Mask del, Mask con, const Family& fam) {
    Mask ground = full & ~del & ~con;
    if (!ground) return;
    if (!cosimple_leaf(ground, fam)) return;
    if (use_dedup) {
      std::string key(8 + 16 * fam.size(), '\0');
      std::memcpy(key.data(), &ground, 8);
      for (size_t i = 0; i < fam.size(); ++i) {
        std::memcpy(key.data() + 8 + 16 * i, &fam[i].pos, 8);
        std::memcpy(key.data() + 16 + 16 * i, &fam[i].neg, 8);
      }
      if (!seen.insert(std::move(key)).second) return;
    }
    if (caps.max_minors >= 0 && cert.minors_checked >= caps.max_minors)
      throw ResourceError("minor cap exceeded during certification");
    ++cert.minors_checked;
    std::vector<int> elems = mask_elements(ground);
    int d = static_cast<int>(elems.size());
    std::vector<int> pos_of(n, -1);
    for (int i = 0; i < d; ++i) pos_of[elems[i]] = i;
    auto record = [&](IntVector flow) {
      cert.witnesses.push_back(MinorRecord{del, con, std::move(flow)});
    };
    for (const SignedVector& c : fam)
      if (popcount(c.support()) <= 2) {
        IntVector flow(d);
        for (Mask t = c.support(); t; t &= t - 1) {
          int e = lowest_element(t);
          flow[pos_of[e]] = c.sign(e);
        }
        record(std::move(flow));
        return;
      }
    std::vector<IntVector> gens;
    gens.reserve(fam.size());
    for (const SignedVector& c : fam) {
      IntVector g(d);
      for (Mask t = c.support(); t; t &= t - 1) {
        int e = lowest_element(t);
        g[pos_of[e]] = c.sign(e);
      }
      gens.push_back(std::move(g));
    }
    IntegerLattice lat(d, std::move(gens));
    for (int i = 0; i < d; ++i) {
      IntVector t(d);
      t[i] = 1;
      if (lat.contains(t)) {
        record(std::move(t));
        return;
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int sg : {1, -1}) {
          IntVector t(d);
          t[i] = 1;
          t[j] = sg;
          if (lat.contains(t)) {
            record(std::move(t));
            return;
          }
        }
    cert.verdict = false;
    cert.failing_minor = std::make_pair(del, con);
    done = true;
  }
};

}  // namespace

GspCertificate certify_coGSP(const OrientedMatroid& o, const GspCaps& caps) {
  int n = o.size();
  if (n > caps.max_elements) throw ResourceError("element cap exceeded during certification");
  CoGspSearch search;
  search.n = n;
  search.full = mask_below(n);
  search.caps = caps;
  // exact dedup keys store the whole signed family; skipped when the root
  // family is large to bound memory (duplicates are then re-verified)
  search.use_dedup = o.circuits.size() <= 256;
  search.run(o.circuits);
  return std::move(search.cert);
}

GspCertificate certify_GSP(const OrientedMatroid& o, const GspCaps& caps) {
  return certify_coGSP(dual_orientation(o), caps);
}

std::optional<FlowVector> nz3_coflow(const OrientedMatroid& o, int cap) {
  int n = o.size();
  if (n > cap) throw ResourceError("nz3 search cap exceeded");
  if (loops(o.underlying)) throw InputError("nz3 coflow needs a loop-free matroid");
  IntegerLattice lat = coflow_lattice(o);
  const HnfResult& hf = lat.hnf();
  int rows = static_cast<int>(hf.h.size());
  std::vector<int> prow(n, -1);
  for (int i = 0; i < rows; ++i) prow[hf.pivot_cols[i]] = i;
  IntVector x(n), y(rows);
  static const int vals[4] = {1, -1, 2, -2};
  std::function<bool(int)> rec = [&](int j) -> bool {
    if (j == n) return true;
    Int s = 0;
    for (int i = 0; i < rows; ++i)
      if (hf.pivot_cols[i] < j) s += y[i] * hf.h[i][j];
    int t = prow[j];
    if (t < 0) {
      if (s != 1 && s != -1 && s != 2 && s != -2) return false;
      x[j] = s;
      return rec(j + 1);
    }
    const Int& piv = hf.h[t][j];
    for (int v : vals) {
      Int d = Int(v) - s;
      if (d % piv != 0) continue;
      y[t] = d / piv;
      x[j] = v;
      if (rec(j + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  auto c = lat.contains(x);
  invariant(c.has_value(), "nz3 back-substitution produced a non-member");
  return FlowVector{x, *c};
}

bool rank3_full_lattice_check(const OrientedMatroid& o) {
  const Matroid& m = o.underlying;
  if (m.full_rank() != 3) throw InputError("rank is not 3");
  if (!is_simple(m)) throw InputError("matroid is not simple");
  if (!is_cosimple(m)) throw InputError("matroid is not cosimple");
  int n = m.size();
  bool uniform = true;
  for (int i = 0; i < n && uniform; ++i)
    for (int j = i + 1; j < n && uniform; ++j)
      for (int k = j + 1; k < n && uniform; ++k)
        if (m.rank(bit(i) | bit(j) | bit(k)) < 3) uniform = false;
  if (uniform) throw InputError("matroid is uniform");
  if (n == 6 && is_isomorphic(m, m_k4())) throw InputError("matroid is M(K4)");
  return flow_lattice(o).is_full();
}

}  // namespace omflow
