#include "omflow/lattice.hpp"

#include <algorithm>

#include "omflow/errors.hpp"

namespace omflow {

namespace {

int leading_index(const IntVector& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

struct EchelonRow {
  IntVector vec;
  IntVector expr;
  int pivot;
};

// v -= q * r, elementwise.
void submul(IntVector& v, const Int& q, const IntVector& r) {
  for (size_t i = 0; i < v.size(); ++i) v[i] -= q * r[i];
}

// Reduction that never touches existing rows.  Returns true when v reduced to
// zero using only exact multiples of pivots; false means the expensive path
// (gcd combination or insertion) is required.
bool cheap_reduce(std::vector<EchelonRow>& rows, IntVector v) {
  for (EchelonRow& r : rows) {
    int lead = leading_index(v);
    if (lead < 0) return true;
    if (lead < r.pivot) return false;
    if (lead > r.pivot) continue;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v[lead].get_mpz_t(), r.vec[lead].get_mpz_t());
    if (rem != 0) return false;
    submul(v, q, r.vec);
  }
  return leading_index(v) < 0;
}

// Full absorption with expression tracking; may rewrite existing rows.
void absorb(std::vector<EchelonRow>& rows, IntVector v, IntVector expr, int dim) {
  (void)dim;
  while (true) {
    int lead = leading_index(v);
    if (lead < 0) return;
    auto it = std::lower_bound(rows.begin(), rows.end(), lead,
                               [](const EchelonRow& r, int p) { return r.pivot < p; });
    if (it == rows.end() || it->pivot != lead) {
      rows.insert(it, EchelonRow{std::move(v), std::move(expr), lead});
      return;
    }
    EchelonRow& r = *it;
    Int a = r.vec[lead], b = v[lead];
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    // Unimodular 2x2 transform: new row gets gcd pivot, v drops the column.
    IntVector new_vec(r.vec.size()), new_expr(r.expr.size());
    for (size_t i = 0; i < r.vec.size(); ++i) new_vec[i] = s * r.vec[i] + t * v[i];
    for (size_t i = 0; i < r.expr.size(); ++i) new_expr[i] = s * r.expr[i] + t * expr[i];
    IntVector v2(v.size()), e2(expr.size());
    for (size_t i = 0; i < v.size(); ++i) v2[i] = ag * v[i] - bg * r.vec[i];
    for (size_t i = 0; i < expr.size(); ++i) e2[i] = ag * expr[i] - bg * r.expr[i];
    r.vec = std::move(new_vec);
    r.expr = std::move(new_expr);
    v = std::move(v2);
    expr = std::move(e2);
  }
}

}  // namespace

HnfResult hermite_normal_form(const std::vector<IntVector>& generators, int dim) {
  for (const IntVector& g : generators)
    if (static_cast<int>(g.size()) != dim) throw InputError("generator dimension mismatch");
  size_t k = generators.size();
  std::vector<EchelonRow> rows;
  for (size_t j = 0; j < k; ++j) {
    if (cheap_reduce(rows, generators[j])) continue;
    IntVector expr(k, Int(0));
    expr[j] = 1;
    absorb(rows, generators[j], std::move(expr), dim);
  }
  // Canonical form: positive pivots, entries above a pivot in [0, pivot).
  for (EchelonRow& r : rows) {
    if (r.vec[r.pivot] < 0) {
      for (Int& x : r.vec) x = -x;
      for (Int& x : r.expr) x = -x;
    }
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[j].vec[rows[i].pivot].get_mpz_t(), rows[i].vec[rows[i].pivot].get_mpz_t());
      if (q != 0) {
        submul(rows[j].vec, q, rows[i].vec);
        submul(rows[j].expr, q, rows[i].expr);
      }
    }
  }
  HnfResult out;
  for (EchelonRow& r : rows) {
    out.h.push_back(std::move(r.vec));
    out.pivot_cols.push_back(r.pivot);
    out.row_exprs.push_back(std::move(r.expr));
  }
  return out;
}

IntegerLattice::IntegerLattice(int dim, std::vector<IntVector> generators)
    : dim_(dim), generators_(std::move(generators)), hnf_(hermite_normal_form(generators_, dim)) {}

std::optional<MembershipCertificate> IntegerLattice::contains(const IntVector& x) const {
  if (static_cast<int>(x.size()) != dim_) throw InputError("membership query dimension mismatch");
  IntVector residual = x;
  std::vector<Int> y(hnf_.h.size());
  int cleared_to = 0;  // residual[0..cleared_to) is known zero
  for (size_t i = 0; i < hnf_.h.size(); ++i) {
    int c = hnf_.pivot_cols[i];
    for (; cleared_to < c; ++cleared_to)
      if (residual[cleared_to] != 0) return std::nullopt;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[c].get_mpz_t(), hnf_.h[i][c].get_mpz_t());
    if (rem != 0) return std::nullopt;
    if (q != 0) submul(residual, q, hnf_.h[i]);
    y[i] = q;
  }
  for (const Int& v : residual)
    if (v != 0) return std::nullopt;
  MembershipCertificate cert;
  cert.target = x;
  cert.coefficients.assign(generators_.size(), Int(0));
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    for (size_t j = 0; j < generators_.size(); ++j) cert.coefficients[j] += y[i] * hnf_.row_exprs[i][j];
  }
  invariant(verify_membership(*this, cert), "membership certificate failed exact re-check");
  return cert;
}

bool IntegerLattice::is_full() const { return rank() == dim_ && pivot_product() == 1; }

Int IntegerLattice::pivot_product() const {
  Int p = 1;
  for (size_t i = 0; i < hnf_.h.size(); ++i) p *= hnf_.h[i][hnf_.pivot_cols[i]];
  return p;
}

bool verify_membership(const IntegerLattice& lattice, const MembershipCertificate& cert) {
  if (cert.coefficients.size() != lattice.generators().size()) return false;
  IntVector acc(lattice.dim(), Int(0));
  for (size_t j = 0; j < cert.coefficients.size(); ++j) {
    if (cert.coefficients[j] == 0) continue;
    const IntVector& g = lattice.generators()[j];
    for (int i = 0; i < lattice.dim(); ++i) acc[i] += cert.coefficients[j] * g[i];
  }
  return acc == cert.target;
}

}  // namespace omflow
