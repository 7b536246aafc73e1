#include <benchmark/benchmark.h>

#include "poolex/expressiveness.hpp"
#include "poolex/generator.hpp"
#include "poolex/pooling.hpp"

namespace {

using namespace poolex;

PoolConfig config_for(OperatorId op) {
  switch (operator_info(op).knob) {
    case SizeKnob::None: return PoolConfig{};
    case SizeKnob::K: return PoolConfig::with_k(3);
    default: return PoolConfig::with_ratio(0.1);
  }
}

void BM_Pool(benchmark::State& state) {
  const auto op = all_operators()[static_cast<std::size_t>(state.range(0))];
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(4);
  const Graph g = random_connected_graph(n, rng);
  const auto x = exact_color_embedding(g, g).first;
  const auto cfg = config_for(op);
  state.SetLabel(to_string(op));
  for (auto _ : state) benchmark::DoNotOptimize(pool(op, g, x, cfg));
}
BENCHMARK(BM_Pool)->ArgsProduct({benchmark::CreateDenseRange(0, 9, 1), {64, 512}});

void BM_Theorem1Oracle(benchmark::State& state) {
  const auto op = all_operators()[static_cast<std::size_t>(state.range(0))];
  const auto pairs = generate_wl_pairs(1, {48, 64}, 5);
  const auto cfg = config_for(op);
  state.SetLabel(to_string(op));
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_oracle(pairs[0], op, cfg, EvalMode::Exact));
}
BENCHMARK(BM_Theorem1Oracle)->DenseRange(0, 9, 1);

}  // namespace
