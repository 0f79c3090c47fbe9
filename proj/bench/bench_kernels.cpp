// Serial reference vs OpenMP kernel, same inputs. Run with OMP_NUM_THREADS set.

#include <benchmark/benchmark.h>

#include <random>

#include "cmg/decomposition.hpp"
#include "cmg/targets.hpp"

using namespace cmg;

namespace {

MixedGraph random_graph(Vertex order, int percent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MixedGraph g(ColorSignature(1, 0), order);
  for (Vertex u = 0; u < order; ++u) {
    for (Vertex v = u + 1; v < order; ++v) {
      if (static_cast<int>(rng() % 100) < percent) g.add_arc(u, v, 1);
    }
  }
  return g;
}

void BM_DensitySerial(benchmark::State& state) {
  const auto g = random_graph(static_cast<Vertex>(state.range(0)), 40, 7);
  for (auto _ : state) benchmark::DoNotOptimize(nash_williams_density_serial(g));
}

void BM_DensityParallel(benchmark::State& state) {
  const auto g = random_graph(static_cast<Vertex>(state.range(0)), 40, 7);
  for (auto _ : state) benchmark::DoNotOptimize(nash_williams_density(g));
}

const PropertySpec kQ2{2, {11, 3, 2}};

void BM_PropertySerial(benchmark::State& state) {
  const auto target = paley_tournament(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_property_q_serial(target, kQ2));
}

void BM_PropertyParallel(benchmark::State& state) {
  const auto target = paley_tournament(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_property_q(target, kQ2));
}

// Order-7 tournaments with Q^{1}: the first hit for seed 1 is attempt 692.
void BM_SearchSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_q_target_serial(ColorSignature(1, 0), 7, {1, {7, 3}}, 1000, 1));
  }
}

void BM_SearchParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_q_target(ColorSignature(1, 0), 7, {1, {7, 3}}, 1000, 1));
  }
}

} // namespace

BENCHMARK(BM_DensitySerial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertySerial)->Arg(43)->Arg(83)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertyParallel)->Arg(43)->Arg(83)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
