#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omflow/multigraph.hpp"

namespace omflow {

// Ground sets are bitmask subsets of {0..n-1}, n <= 64.
using Mask = std::uint64_t;

inline int popcount(Mask s) { return std::popcount(s); }
inline Mask bit(int e) { return Mask{1} << e; }
inline Mask mask_below(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline int lowest_element(Mask s) { return std::countr_zero(s); }

namespace detail {
struct MatroidImpl;
}

enum class MatroidKind { uniform, graphic, bicircular, lattice_path, dual, minor, explicit_bases };

class Matroid;

// Construction payload, kept for serialization and for graph-aware
// algorithms (a bicircular matroid remembers its graph).
struct MatroidInfo {
  MatroidKind kind;
  int uniform_rank = 0;
  std::shared_ptr<const MultiGraph> graph;
  std::string upper, lower;
  std::shared_ptr<const Matroid> base;
  Mask deleted = 0, contracted = 0;
  std::vector<Mask> bases;
};

class Matroid {
 public:
  Matroid();  // the empty matroid

  int size() const;
  int rank(Mask s) const;
  int full_rank() const { return full_rank_; }
  Mask full_mask() const { return full_mask_; }
  const MatroidInfo& info() const;

  // For minors: new element id -> element id of info().base.
  const std::vector<int>& minor_elements() const;

  // Rank-axiom spot check on pseudo-random subsets; throws InvariantError.
  // Run at trust boundaries (deserialization) and in tests, not on every
  // internal construction.
  void self_check(std::uint64_t seed = 1, int trials = 64) const;

  explicit Matroid(std::shared_ptr<const detail::MatroidImpl> impl);

 private:
  std::shared_ptr<const detail::MatroidImpl> impl_;
  Mask full_mask_;
  int full_rank_;
};

Matroid make_uniform(int r, int n);
Matroid make_graphic(const MultiGraph& g);
Matroid make_bicircular(const MultiGraph& g);
// Bounds are strings over {N, E}; upper must stay weakly above lower.
// Element j is the j-th step position; bases are the N-position sets of
// monotone paths between the bounds.
Matroid make_lattice_path(const std::string& upper, const std::string& lower);
Matroid make_explicit_bases(int n, std::vector<Mask> bases);

Matroid dual(const Matroid& m);
// Elements outside del|con are renumbered ascending.
Matroid minor(const Matroid& m, Mask del, Mask con);
Matroid restriction(const Matroid& m, Mask keep);

bool is_independent(const Matroid& m, Mask s);
bool is_circuit(const Matroid& m, Mask c);
Mask closure(const Matroid& m, Mask s);
Mask loops(const Matroid& m);
Mask coloops(const Matroid& m);

// All circuits via DFS over independent prefixes, sorted ascending as
// integers. Throws ResourceError when size() > cap.
std::vector<Mask> circuits(const Matroid& m, int cap = 20);
// Circuits contained in a fixed domain, without enumerating the rest.
std::vector<Mask> circuits_within(const Matroid& m, Mask domain);

// Flats of rank full_rank-k, visited in an unspecified but deterministic
// order; the vector version returns them sorted ascending as integers.
void for_each_flat_of_corank(const Matroid& m, int k, const std::function<void(Mask)>& fn);
std::vector<Mask> flats_of_corank(const Matroid& m, int k);

void for_each_independent_set_of_size(const Matroid& m, int size,
                                      const std::function<void(Mask)>& fn);

// Copoint partition of the complement of a corank-2 flat.
struct ColineReport {
  Mask coline;
  std::vector<Mask> classes;  // ascending by smallest element
  int degree;
  int singular;   // classes of size 1
  int multiple;   // classes of size >= 2
  bool positive;  // singular > multiple
};

ColineReport coline_report(const Matroid& m, Mask coline);

// Partition of the ground set into series classes (coparallel elements);
// coloops are flagged singletons.
struct SeriesClasses {
  std::vector<Mask> classes;  // ascending by smallest element
  Mask coloop_mask;
};

SeriesClasses series_classes(const Matroid& m);

struct SimplifyResult {
  Matroid result;
  // Original element -> surviving original representative; -1 when the
  // element vanishes (loop under simplify, coloop under cosimplify).
  std::vector<int> representative;
  // Original element -> element id in result; -1 when removed.
  std::vector<int> element_map;
};

SimplifyResult simplify(const Matroid& m);
SimplifyResult cosimplify(const Matroid& m);

bool is_simple(const Matroid& m);
bool is_cosimple(const Matroid& m);

}  // namespace omflow
