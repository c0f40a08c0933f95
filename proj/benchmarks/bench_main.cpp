#include <benchmark/benchmark.h>

#include "omflow/bicircular.hpp"
#include "omflow/double_circuit.hpp"
#include "omflow/lattice.hpp"
#include "omflow/matroid.hpp"
#include "omflow/rng.hpp"

namespace {

using namespace omflow;

void bm_hnf_absorb(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  Rng rng(7);
  std::vector<IntVector> gens;
  for (int i = 0; i < 2 * dim; ++i) {
    IntVector v(dim);
    for (int j = 0; j < dim; ++j) v[j] = static_cast<long>(rng.range(-4, 4));
    gens.push_back(std::move(v));
  }
  for (auto _ : state) {
    IntegerLattice lat(dim, gens);
    benchmark::DoNotOptimize(lat.rank());
  }
}
BENCHMARK(bm_hnf_absorb)->Arg(8)->Arg(16)->Arg(32);

void bm_bicircular_rank(benchmark::State& state) {
  Matroid m = make_bicircular(named_graph("petersen"));
  Mask full = m.full_mask();
  Rng rng(11);
  std::vector<Mask> subsets;
  for (int i = 0; i < 256; ++i) subsets.push_back(rng.next() & full);
  for (auto _ : state) {
    int acc = 0;
    for (Mask s : subsets) acc += m.rank(s);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_bicircular_rank);

void bm_circuit_enumeration(benchmark::State& state) {
  Matroid m = make_bicircular(named_graph("petersen"));
  for (auto _ : state) {
    auto cs = circuits(m, 20);
    benchmark::DoNotOptimize(cs.size());
  }
}
BENCHMARK(bm_circuit_enumeration);

void bm_petersen_double_circuits(benchmark::State& state) {
  Matroid m = make_bicircular(named_graph("petersen"));
  for (auto _ : state) {
    long count = 0;
    for_each_double_circuit(m, [&](const DoubleCircuitReport&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(bm_petersen_double_circuits);

}  // namespace

BENCHMARK_MAIN();
