#include <benchmark/benchmark.h>

#include "tukey/data.hpp"
#include "tukey/dualgraph.hpp"
#include "tukey/oracle.hpp"
#include "tukey/region.hpp"
#include "tukey/search.hpp"

using namespace tukey;

namespace {

// Chained B from level 1 up to k against a fresh engine each iteration.
void BM_SearchB(benchmark::State& state) {
  const auto x = generate_gaussian(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1);
  const int k = static_cast<int>(state.range(2));
  std::size_t visited = 0;
  for (auto _ : state) {
    SearchEngine eng(x);
    auto r = eng.search(1, {Strategy::A});
    visited = r.ridges_visited;
    for (int level = 2; level <= k; ++level) {
      r = eng.search(level, {Strategy::B, r.halfspaces});
      visited += r.ridges_visited;
    }
    benchmark::DoNotOptimize(r.halfspaces.data());
  }
  state.counters["visited"] = static_cast<double>(visited);
}

void BM_SearchC(benchmark::State& state) {
  const auto x = generate_gaussian(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1);
  const int k = static_cast<int>(state.range(2));
  std::size_t visited = 0;
  for (auto _ : state) {
    SearchEngine eng(x);
    visited = 0;
    for (int level = 1; level <= k; ++level) {
      auto r = eng.search(level, {Strategy::C});
      visited += r.ridges_visited;
      benchmark::DoNotOptimize(r.halfspaces.data());
    }
  }
  state.counters["visited"] = static_cast<double>(visited);
}

void BM_ExactDepth(benchmark::State& state) {
  const auto x = generate_gaussian(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 2);
  const auto probes = sample_probes(x, 16, 3);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(exact_depth(probes[i++ % probes.size()], x));
}

void BM_Region(benchmark::State& state) {
  const auto x = generate_gaussian(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 4);
  const auto hs = ridge_search(x, static_cast<int>(state.range(2)), {Strategy::C}).halfspaces;
  for (auto _ : state) {
    auto reg = intersect_halfspaces(hs, x.dim());
    benchmark::DoNotOptimize(reg.vertices.data());
  }
  state.counters["halfspaces"] = static_cast<double>(hs.size());
}

void BM_DualGraph(benchmark::State& state) {
  const auto x = generate_gaussian(static_cast<int>(state.range(0)), 3, 5);
  for (auto _ : state) {
    auto g = build_dual_graph(x);
    benchmark::DoNotOptimize(g.size());
  }
}

}  // namespace

BENCHMARK(BM_SearchB)->Args({50, 3, 5})->Args({100, 4, 10})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchC)->Args({50, 3, 5})->Args({100, 4, 10})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactDepth)->Args({50, 3})->Args({50, 4})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Region)->Args({50, 3, 5})->Args({40, 4, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualGraph)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
