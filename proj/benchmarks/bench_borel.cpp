#include <benchmark/benchmark.h>

#include "borel/adams.hpp"
#include "borel/duality.hpp"
#include "borel/groups.hpp"

using namespace borel;

namespace {

GroupData torus(int r) { return GroupData(std::vector<int>(static_cast<std::size_t>(r), 2)); }

void BM_KoszulHomology(benchmark::State& state) {
  const GroupData g = torus(static_cast<int>(state.range(0)));
  const FreeDGModule kb = koszul_model(g);
  for (auto _ : state) {
    const DGModule m = to_degreewise(kb, Window::make(-16, 0, false, true));
    benchmark::DoNotOptimize(homology_dims(m));
  }
}
BENCHMARK(BM_KoszulHomology)->DenseRange(1, 3);

void BM_ExtOfResidueField(benchmark::State& state) {
  const GroupData g = torus(static_cast<int>(state.range(0)));
  const DGModule k = residue_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(ext_bigraded(k, k));
}
BENCHMARK(BM_ExtOfResidueField)->DenseRange(1, 3);

void BM_CirclePage(benchmark::State& state) {
  const GroupData g = torus(1);
  const DGModule x = direct_sum({residue_field(g), residue_field(g, 3), monomial_quotient(g, {{3}}, 1)});
  for (auto _ : state) benchmark::DoNotOptimize(e2_page(x, x));
}
BENCHMARK(BM_CirclePage);

void BM_EndCheck(benchmark::State& state) {
  const GroupData g = torus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(double_centralizer_check(g));
}
BENCHMARK(BM_EndCheck)->DenseRange(1, 2);

void BM_DerivedDual(benchmark::State& state) {
  const RingMap r = catalog_pair("T^2<SU(3)");
  for (auto _ : state) benchmark::DoNotOptimize(derived_dual(r));
}
BENCHMARK(BM_DerivedDual);

}  // namespace

BENCHMARK_MAIN();
