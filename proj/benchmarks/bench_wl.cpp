#include <benchmark/benchmark.h>

#include "poolex/generator.hpp"
#include "poolex/mp.hpp"
#include "poolex/wl.hpp"

namespace {

using namespace poolex;

void BM_WlRefineJoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Graph a = random_connected_graph(n, rng);
  const Graph b = random_connected_graph(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wl_refine_joint(a, b, WlInit::Uniform));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WlRefineJoint)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_ExactColorEmbedding(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const Graph a = random_connected_graph(n, rng);
  const Graph b = random_connected_graph(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_color_embedding(a, b));
}
BENCHMARK(BM_ExactColorEmbedding)->RangeMultiplier(4)->Range(16, 1024);

void BM_GenerateWlPairs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_wl_pairs(10, {16, 64}, 3));
}
BENCHMARK(BM_GenerateWlPairs);

}  // namespace
