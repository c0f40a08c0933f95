#pragma once

#include <optional>
#include <vector>

#include "omflow/rational.hpp"

namespace omflow {

using IntVector = std::vector<Int>;

// Row-style Hermite normal form of the lattice spanned by the input rows:
// pivots positive, entries above each pivot reduced into [0, pivot), zero
// rows dropped.  row_exprs[i] expresses h[i] as an integer combination of the
// original generators, so membership answers can be certified against the
// caller's own vectors.
struct HnfResult {
  std::vector<IntVector> h;
  std::vector<int> pivot_cols;
  std::vector<IntVector> row_exprs;  // h[i] = sum_j row_exprs[i][j] * gen[j]
};

HnfResult hermite_normal_form(const std::vector<IntVector>& generators, int dim);

// Certifies x = sum_i coefficients[i] * generators[i]; the product is
// re-verified exactly whenever a certificate is produced.
struct MembershipCertificate {
  IntVector target;
  IntVector coefficients;
};

class IntegerLattice {
 public:
  IntegerLattice(int dim, std::vector<IntVector> generators);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(hnf_.h.size()); }
  const std::vector<IntVector>& generators() const { return generators_; }
  const HnfResult& hnf() const { return hnf_; }

  // None when x is not in the lattice; otherwise a verified certificate.
  std::optional<MembershipCertificate> contains(const IntVector& x) const;

  // True iff the lattice is all of Z^dim (full rank, every pivot 1).
  bool is_full() const;

  // Product of the HNF pivots: the index [Z^dim : L] when rank == dim.
  Int pivot_product() const;

 private:
  int dim_;
  std::vector<IntVector> generators_;
  HnfResult hnf_;
};

// Exact check of a certificate against a lattice's generators.
bool verify_membership(const IntegerLattice& lattice, const MembershipCertificate& cert);

}  // namespace omflow
