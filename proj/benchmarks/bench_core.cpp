// Microbenchmarks for the paths the experiment harness leans on: hex metric
// queries, scored memory retrieval, fog-of-war view construction, and full
// simulation ticks.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "genwar/baselines.h"
#include "genwar/hex.h"
#include "genwar/memory.h"
#include "genwar/rng.h"
#include "genwar/scenario.h"
#include "genwar/scorers.h"
#include "genwar/sim.h"
#include "genwar/view.h"

using namespace genwar;

namespace {

void bm_hex_distance(benchmark::State& state) {
  Rng rng(1);
  std::vector<std::pair<HexCoord, HexCoord>> pairs(1024);
  for (auto& [a, b] : pairs) {
    a = {static_cast<int>(rng.bounded(40)), static_cast<int>(rng.bounded(40))};
    b = {static_cast<int>(rng.bounded(40)), static_cast<int>(rng.bounded(40))};
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ & 1023];
    benchmark::DoNotOptimize(hex_distance(a, b));
  }
}
BENCHMARK(bm_hex_distance);

void bm_retrieve(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  RetrievalWeights w;
  w.k = 8;
  MemoryStream stream(1, w);
  Rng rng(2);
  for (int i = 0; i < count; ++i)
    stream.record(MemoryKind::observation, static_cast<int>(rng.bounded(100)),
                  "contact number " + std::to_string(rng.bounded(50)),
                  1 + static_cast<int>(rng.bounded(10)));
  FixedRelevanceScorer scorer(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        stream.retrieve("enemy near the point", 100, scorer, /*update_access=*/false));
  }
}
BENCHMARK(bm_retrieve)->Arg(16)->Arg(64)->Arg(256);

void bm_build_side_view(benchmark::State& state) {
  const GameState s = make_initial_state(make_default_scenario(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_side_view(s, Side::red));
  }
}
BENCHMARK(bm_build_side_view);

void bm_step_tick(benchmark::State& state) {
  const Scenario scenario = make_default_scenario();
  const GameState start = make_initial_state(scenario, 4);
  RulePolicy rule;
  ActionMap actions;
  for (Side side : {Side::red, Side::blue}) {
    const SideView view = build_side_view(start, side);
    for (const auto& [id, a] : rule.decide(view)) actions[id] = a;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(start, actions));
  }
}
BENCHMARK(bm_step_tick);

}  // namespace

BENCHMARK_MAIN();
