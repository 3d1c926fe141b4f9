#include "bundle_forge/bundles.hpp"
#include "bundle_forge/quadbench.hpp"

#include <benchmark/benchmark.h>

using namespace bundle_forge;

namespace {

WeightedProjector p_minus(std::int64_t n) {
  return projector_from_ket(monopole_ket(MonopoleFamily::minus, static_cast<unsigned>(n)));
}

void BM_ChernExact(benchmark::State& state) {
  const auto p = p_minus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chern_number_exact(p));
}
BENCHMARK(BM_ChernExact)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_ChernExactTildeReal(benchmark::State& state) {
  const auto p = real_form(projector_from_ket(tilde_ket2()));
  for (auto _ : state) benchmark::DoNotOptimize(chern_number_exact(p));
}
BENCHMARK(BM_ChernExactTildeReal)->Unit(benchmark::kMillisecond);

void BM_VerifyAxioms(benchmark::State& state) {
  const auto p = p_minus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_axioms(p));
}
BENCHMARK(BM_VerifyAxioms)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

////////////////////////////////////////////////////////////////////////////////

void BM_QuadAnalytic(benchmark::State& state) {
  const auto p = p_minus(3);
  const auto grid = quad::SphereGrid::make(static_cast<std::size_t>(state.range(0)),
                                           2 * static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quad::chern_number_quad(p, grid, quad::Derivative::analytic));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) * 2);
}
BENCHMARK(BM_QuadAnalytic)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_QuadFiniteDifference(benchmark::State& state) {
  const auto p = p_minus(3);
  const auto grid = quad::SphereGrid::make(64, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::chern_number_quad(p, grid, quad::Derivative::finite_difference));
}
BENCHMARK(BM_QuadFiniteDifference)->Unit(benchmark::kMillisecond);

void BM_QuadGauged(benchmark::State& state) {
  const auto k = monopole_ket(MonopoleFamily::minus, 3);
  const auto gf = quad::gauge_field(k, quad::random_gauge(k.size(), 1));
  const auto grid = quad::SphereGrid::make(64, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::chern_number_quad(gf.field, grid, quad::Derivative::finite_difference));
}
BENCHMARK(BM_QuadGauged)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const XPoly f = reduce_x(RawXPoly::monomial({4, 2, 2}));
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::monte_carlo_integral(f, static_cast<std::uint64_t>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
