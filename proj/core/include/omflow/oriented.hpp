#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omflow/double_circuit.hpp"
#include "omflow/lattice.hpp"
#include "omflow/matroid.hpp"
#include "omflow/rational.hpp"

namespace omflow {

// Sign pattern in {0,+1,-1}^n. A signed circuit and its negative are the
// same circuit; the canonical representative has its lowest support
// coordinate positive.
struct SignedVector {
  Mask pos = 0, neg = 0;

  Mask support() const { return pos | neg; }
  int sign(int e) const { return (pos >> e) & 1 ? 1 : ((neg >> e) & 1 ? -1 : 0); }
  bool operator==(const SignedVector& o) const { return pos == o.pos && neg == o.neg; }
  bool operator<(const SignedVector& o) const {
    return pos != o.pos ? pos < o.pos : neg < o.neg;
  }
};

SignedVector negate(SignedVector v);
SignedVector canonical_signed(SignedVector v);

struct OrientedMatroid {
  Matroid underlying;
  std::vector<SignedVector> circuits;  // canonical representatives, sorted
  std::optional<RationalMatrix> realization;  // columns indexed by elements
  // Set by dual_orientation so cocircuits stay available without a
  // realization (they are the primal's signed circuits).
  std::optional<std::vector<SignedVector>> cocircuit_hint;

  int size() const { return underlying.size(); }
};

// Signs each circuit of the column matroid via its 1-dimensional null
// space. With expected present, the column matroid must match expected on
// subset ranks (mod-p sweep with exact fallback for n <= 16, randomized
// probes plus circuit checks for n <= 20); mismatch throws GenericityError.
// Without expected the exact column matroid is built (n <= 14).
OrientedMatroid orient_from_realization(const RationalMatrix& a,
                                        const std::optional<Matroid>& expected,
                                        int circuit_cap = 20);

// Seeded generic realizations; deterministic retry schedule seed, seed+1,
// ... with at most 8 attempts before GenericityError.
OrientedMatroid realize_uniform(int r, int n, std::uint64_t seed);
OrientedMatroid realize_bicircular(const MultiGraph& g, std::uint64_t seed);
OrientedMatroid realize_lattice_path(const std::string& upper, const std::string& lower,
                                     std::uint64_t seed);
// Signed vertex-edge incidence; exact, no randomness needed.
OrientedMatroid realize_graphic(const MultiGraph& g);

OrientedMatroid reorient(const OrientedMatroid& o, Mask s);

// From the realization (one functional per copoint), or from the stored
// hint when this orientation came from dual_orientation.
std::vector<SignedVector> signed_cocircuits(const OrientedMatroid& o);

// Signed circuits become the cocircuits of the dual; no realization is
// attached.
OrientedMatroid dual_orientation(const OrientedMatroid& o);

IntegerLattice flow_lattice(const OrientedMatroid& o);
IntegerLattice coflow_lattice(const OrientedMatroid& o);

struct FlowVector {
  IntVector entries;
  MembershipCertificate certificate;
};

// Supports of size 1 then 2 in lexicographic order, sign patterns (+),
// (+,+), (+,-); first lattice member returned.
std::optional<FlowVector> small_support_flow(const OrientedMatroid& o, int max_support = 2);

// Lemma-backed flow inside a double circuit: generators restricted to
// signed circuits supported in D, target one singular element (even
// degree) or a +/- combination of two singular elements (odd degree).
FlowVector flow_from_double_circuit(const OrientedMatroid& o, const DoubleCircuitReport& report);

struct GspCaps {
  int max_elements = 12;
  int max_removals = -1;   // limit on |delete| + |contract|; -1 = unlimited
  long long max_minors = -1;
};

struct MinorRecord {
  Mask del = 0, con = 0;
  IntVector flow;  // over the minor's elements, ascending
};

struct GspCertificate {
  bool verdict = false;
  long long minors_checked = 0;
  std::vector<MinorRecord> witnesses;
  std::optional<std::pair<Mask, Mask>> failing_minor;
};

// Surveys all delete/contract minors within caps, skips non-cosimple ones,
// deduplicates by ground set + signed circuit family, and requires a
// {0,+1,-1} flow with at most two nonzero entries for each. certify_GSP
// runs the same check on the dual orientation, so its witness masks refer
// to the dual's minors.
GspCertificate certify_coGSP(const OrientedMatroid& o, const GspCaps& caps = {});
GspCertificate certify_GSP(const OrientedMatroid& o, const GspCaps& caps = {});

// Exhaustive search for a coflow with every entry in {+1,-1,+2,-2}; per
// coordinate the values are tried in the order 1, -1, 2, -2, pruned by HNF
// back-substitution. Needs cocircuits (realization or dual hint) and a
// loop-free underlying matroid.
std::optional<FlowVector> nz3_coflow(const OrientedMatroid& o, int cap = 12);

// For simple, cosimple, rank-3, non-uniform underlying matroids other than
// M(K4): whether the flow lattice is all of Z^n.
bool rank3_full_lattice_check(const OrientedMatroid& o);

}  // namespace omflow
