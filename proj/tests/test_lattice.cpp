#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "omflow/errors.hpp"
#include "omflow/lattice.hpp"
#include "omflow/rng.hpp"
#include "support/oracles.hpp"

using namespace omflow;
using namespace omflow::test;

namespace {

std::vector<IntVector> random_generators(Rng& rng, int dim, int count, int span) {
  std::vector<IntVector> gens(count, IntVector(dim, 0));
  for (auto& g : gens)
    for (auto& e : g) e = rng.range(-span, span);
  return gens;
}

}  // namespace

TEST_CASE("hermite normal form basics") {
  HnfResult h = hermite_normal_form({{2, 0}, {0, 2}, {1, 1}}, 2);
  REQUIRE(h.h.size() == 2);
  CHECK(h.h[0] == IntVector{1, 1});
  CHECK(h.h[1] == IntVector{0, 2});
  CHECK(h.pivot_cols == std::vector<int>{0, 1});

  CHECK(hermite_normal_form({}, 3).h.empty());
  CHECK(hermite_normal_form({{0, 0, 0}}, 3).h.empty());
  CHECK_THROWS_AS(hermite_normal_form({{1, 2}}, 3), InputError);
}

TEST_CASE("hnf matches the independent implementation") {
  Rng rng(411);
  for (int trial = 0; trial < 400; ++trial) {
    int dim = static_cast<int>(rng.range(1, 6));
    int count = static_cast<int>(rng.range(0, 6));
    auto gens = random_generators(rng, dim, count, 9);
    HnfResult lib = hermite_normal_form(gens, dim);
    std::vector<IntVector> ref = naive_hnf(gens, dim);
    CAPTURE(trial);
    CHECK(lib.h == ref);

    // Row expressions reproduce each HNF row from the generators.
    REQUIRE(lib.row_exprs.size() == lib.h.size());
    for (size_t i = 0; i < lib.h.size(); ++i) {
      IntVector acc(dim, 0);
      for (size_t j = 0; j < gens.size(); ++j)
        for (int c = 0; c < dim; ++c) acc[c] += lib.row_exprs[i][j] * gens[j][c];
      CHECK(acc == lib.h[i]);
    }
  }
}

TEST_CASE("hnf shape invariants") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    int dim = static_cast<int>(rng.range(1, 7));
    auto gens = random_generators(rng, dim, static_cast<int>(rng.range(1, 7)), 20);
    HnfResult h = hermite_normal_form(gens, dim);
    for (size_t i = 0; i < h.h.size(); ++i) {
      int p = h.pivot_cols[i];
      CHECK(h.h[i][p] > 0);
      for (int c = 0; c < p; ++c) CHECK(h.h[i][c] == 0);
      for (size_t above = 0; above < i; ++above) {
        CHECK(h.h[above][p] >= 0);
        CHECK(h.h[above][p] < h.h[i][p]);
      }
    }
    CHECK(std::is_sorted(h.pivot_cols.begin(), h.pivot_cols.end()));
  }
}

TEST_CASE("membership agrees with box search") {
  Rng rng(140);
  for (int trial = 0; trial < 250; ++trial) {
    int dim = static_cast<int>(rng.range(1, 4));
    int count = static_cast<int>(rng.range(1, 3));
    auto gens = random_generators(rng, dim, count, 3);
    IntegerLattice lat(dim, gens);
    IntVector x(dim);
    for (auto& e : x) e = rng.range(-4, 4);
    auto cert = lat.contains(x);
    CAPTURE(trial);
    if (brute_lattice_member(gens, x, 6)) CHECK(cert.has_value());
    if (cert) {
      CHECK(verify_membership(lat, *cert));
      CHECK(cert->target == x);
      IntVector acc(dim, 0);
      REQUIRE(cert->coefficients.size() == gens.size());
      Int biggest = 0;
      for (size_t i = 0; i < gens.size(); ++i) {
        Int mag = abs(cert->coefficients[i]);
        if (mag > biggest) biggest = mag;
        for (int c = 0; c < dim; ++c) acc[c] += cert->coefficients[i] * gens[i][c];
      }
      CHECK(acc == x);
      if (biggest <= 6) CHECK(brute_lattice_member(gens, x, 6));
    } else {
      CHECK(!brute_lattice_member(gens, x, 6));
    }
  }
}

TEST_CASE("membership always finds constructed members") {
  Rng rng(2718);
  for (int trial = 0; trial < 120; ++trial) {
    int dim = static_cast<int>(rng.range(1, 6));
    auto gens = random_generators(rng, dim, static_cast<int>(rng.range(1, 5)), 8);
    IntVector x(dim, 0);
    for (const auto& g : gens) {
      Int c = rng.range(-30, 30);
      for (int j = 0; j < dim; ++j) x[j] += c * g[j];
    }
    IntegerLattice lat(dim, gens);
    auto cert = lat.contains(x);
    REQUIRE(cert.has_value());
    CHECK(verify_membership(lat, *cert));
  }
}

TEST_CASE("fullness and index") {
  CHECK(IntegerLattice(2, {{1, 0}, {0, 1}}).is_full());
  CHECK(IntegerLattice(2, {{1, 2}, {1, 3}}).is_full());
  IntegerLattice halved(2, {{2, 0}, {0, 1}});
  CHECK(!halved.is_full());
  CHECK(halved.pivot_product() == 2);
  CHECK(!IntegerLattice(2, {{1, 1}}).is_full());
  CHECK(IntegerLattice(3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 1}}).pivot_product() == 6);
  IntegerLattice zero(2, {});
  CHECK(zero.rank() == 0);
  CHECK(zero.contains(IntVector{0, 0}).has_value());
  CHECK(!zero.contains(IntVector{1, 0}).has_value());
}

TEST_CASE("lattice input validation") {
  CHECK_THROWS_AS(IntegerLattice(2, {{1, 2, 3}}), InputError);
  IntegerLattice lat(2, {{1, 0}});
  CHECK_THROWS_AS(lat.contains(IntVector{1, 2, 3}), InputError);
}

TEST_CASE("hnf is deterministic") {
  Rng rng(5);
  auto gens = random_generators(rng, 5, 7, 50);
  HnfResult a = hermite_normal_form(gens, 5);
  HnfResult b = hermite_normal_form(gens, 5);
  CHECK(a.h == b.h);
  CHECK(a.row_exprs == b.row_exprs);
  CHECK(a.pivot_cols == b.pivot_cols);
}
