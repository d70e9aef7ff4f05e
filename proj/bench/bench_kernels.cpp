// Serial reference kernels against their OpenMP versions.

#include "minspace/generators.hpp"
#include "minspace/gromov_hausdorff.hpp"
#include "minspace/stone.hpp"
#include "minspace/structures.hpp"
#include "minspace/ultrametric.hpp"

#include <benchmark/benchmark.h>

using namespace minspace;

namespace {

std::vector<StructurePtr> structures() {
  gen::Rng rng(5);
  const Signature sig = parse_signature("const c; fn f/1; fn g/1;");
  std::vector<StructurePtr> out;
  for (int i = 0; i < 10; ++i) out.push_back(std::make_shared<FinitelyPresented>(gen::presentation(rng, sig, 3)));
  return out;
}

int threads(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void BM_DistanceMatrixSerial(benchmark::State& state) {
  const auto items = structures();
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix_serial(items, 10));
}
BENCHMARK(BM_DistanceMatrixSerial)->Unit(benchmark::kMillisecond);

void BM_DistanceMatrixParallel(benchmark::State& state) {
  const auto items = structures();
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix_parallel(items, 10, threads(state)));
}
BENCHMARK(BM_DistanceMatrixParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

const Signature& type_signature() {
  static const Signature sig = parse_signature("const c; fn f/1; rel P/1;");
  return sig;
}

void BM_TypesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_m_types_serial(type_signature(), 5));
}
BENCHMARK(BM_TypesSerial)->Unit(benchmark::kMillisecond);

void BM_TypesParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_m_types_parallel(type_signature(), 5, kDefaultTypeBudget, threads(state)));
}
BENCHMARK(BM_TypesParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

std::pair<FiniteSemiMetric, FiniteSemiMetric> spaces() {
  gen::Rng rng(9);
  return {gen::metric(rng, 6, 9, 4), gen::metric(rng, 6, 9, 4)};
}

void BM_GhSerial(benchmark::State& state) {
  const auto [x, y] = spaces();
  for (auto _ : state) benchmark::DoNotOptimize(gh_distance_serial(x, y));
}
BENCHMARK(BM_GhSerial)->Unit(benchmark::kMillisecond);

void BM_GhParallel(benchmark::State& state) {
  const auto [x, y] = spaces();
  for (auto _ : state) benchmark::DoNotOptimize(gh_distance_parallel(x, y, threads(state)));
}
BENCHMARK(BM_GhParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Universal(benchmark::State& state) {
  gen::Rng rng(13);
  const Signature sig = parse_signature("const c; fn f/1; fn g/2;");
  FiniteTable t = gen::table(rng, sig, 24);
  t.set_constant(sig.symbols(SymbolKind::Constant)[0], 0);
  const auto q = parse_quantified("forall x y z: !(g(x, g(y, z)) = g(g(x, y), z)) | f(x) = f(x)", sig);
  for (auto _ : state) benchmark::DoNotOptimize(eval_universal(t, q, threads(state)));
}
BENCHMARK(BM_Universal)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
