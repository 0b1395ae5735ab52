#include <benchmark/benchmark.h>

#include "specreg/filters.hpp"
#include "specreg/numeric.hpp"
#include "specreg/operators.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/rates_noisy.hpp"
#include "specreg/source_conditions.hpp"

namespace {

using namespace specreg;

SpectralOperator poly(std::size_t n) { return make_operator({DecayKind::polynomial, 1.0, n}); }

void BM_ErrorCurve(benchmark::State& state) {
  const auto op = poly(static_cast<std::size_t>(state.range(0)));
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(1.0), 1.0});
  const auto grid = log_grid(1e-8, 1.0, 20);
  const auto f = FilterFamily::tikhonov();
  for (auto _ : state) benchmark::DoNotOptimize(error_curve(op, x, f, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(grid.size()));
}
BENCHMARK(BM_ErrorCurve)->Arg(1000)->Arg(10000);

void BM_ValidateGenerator(benchmark::State& state) {
  const auto grid = log_grid(1e-8, 1e2, static_cast<int>(state.range(0)));
  const auto f = FilterFamily::iterated_tikhonov(2);
  for (auto _ : state) benchmark::DoNotOptimize(validate_generator(f, grid, grid));
}
BENCHMARK(BM_ValidateGenerator)->Arg(10)->Arg(20);

void BM_DistanceFunction(benchmark::State& state) {
  const auto op = poly(static_cast<std::size_t>(state.range(0)));
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(0.5), 1.0});
  const auto phi = IndexFunction::holder(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(distance_function(op, x, phi, 100.0));
}
BENCHMARK(BM_DistanceFunction)->Arg(1000)->Arg(10000);

void BM_WorstCaseBracket(benchmark::State& state) {
  const auto op = poly(4000);
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(1.0), 1.0});
  const auto grid = log_grid(1e-12, 1e2, 50);
  const auto f = FilterFamily::tikhonov();
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_bracket(op, x, f, 1e-3, grid, {0.5, 0.25}));
}
BENCHMARK(BM_WorstCaseBracket)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
