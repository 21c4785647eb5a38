#include <benchmark/benchmark.h>

#include "partspec/commlattice.hpp"
#include "partspec/ks.hpp"
#include "partspec/obstruction.hpp"
#include "partspec/primespec.hpp"

namespace {

using namespace partspec;

void BM_LatticeM2F3(benchmark::State& state) {
  const RingTable m = make_matrix_ring(make_zmod(3), 2);
  const LatticeOptions opts{Budget{}, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_commutative_subrings(m, opts));
}
BENCHMARK(BM_LatticeM2F3)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LatticeT3F2(benchmark::State& state) {
  const RingTable t = make_triangular_ring(make_zmod(2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_commutative_subrings(t));
}
BENCHMARK(BM_LatticeT3F2)->Unit(benchmark::kMillisecond);

void BM_PartSpecM2F3(benchmark::State& state) {
  const RingTable m = make_matrix_ring(make_zmod(3), 2);
  const CommLattice lat = enumerate_commutative_subrings(m);
  for (auto _ : state) benchmark::DoNotOptimize(part_spec(m, lat));
}
BENCHMARK(BM_PartSpecM2F3)->Unit(benchmark::kMillisecond);

void BM_PartialMorphismsT2F3(benchmark::State& state) {
  const RingTable k = make_zmod(3);
  const RingTable t = make_triangular_ring(k, 2);
  const CommLattice lat = enumerate_commutative_subrings(t);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_partial_morphisms(t, k, lat));
}
BENCHMARK(BM_PartialMorphismsT2F3)->Unit(benchmark::kMillisecond);

void BM_PeresColoring(benchmark::State& state) {
  const RaySystem p = generate_peres();
  for (auto _ : state) benchmark::DoNotOptimize(ks_colorable(p));
}
BENCHMARK(BM_PeresColoring)->Unit(benchmark::kMicrosecond);

void BM_PeresLift(benchmark::State& state) {
  const RaySystem p = generate_peres();
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks_colorable(lift_to_dimension(p, n)));
}
BENCHMARK(BM_PeresLift)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_MoritaF5(benchmark::State& state) {
  const RingTable k = make_gf(5, 1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derive_contradiction(make_morita_scenario(k, n)));
}
BENCHMARK(BM_MoritaF5)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
