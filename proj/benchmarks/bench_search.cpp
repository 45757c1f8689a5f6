// Copyright 2026 The EdgeGAE Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "edgegae/model.hpp"
#include "edgegae/search.hpp"

namespace {

using namespace edgegae;

Heatmap untrained_heatmap(const Instance& inst) {
  const EdgeGae model(ModelConfig{}, 2);
  return predict_heatmap(model, knn_sparsify(inst, model.config().knn));
}

void BM_RouletteTour(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(n, 1);
  const ScoreTable scores = symmetrize(untrained_heatmap(inst), 1e-8);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(roulette_tour(scores, seed++));
  state.SetComplexityN(n);
}
BENCHMARK(BM_RouletteTour)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_TwoOpt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(n, 2);
  Order order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const Tour start = make_tour(inst, order);
  for (auto _ : state) benchmark::DoNotOptimize(two_opt(inst, start));
  state.SetComplexityN(n);
}
BENCHMARK(BM_TwoOpt)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_BeamSearch(benchmark::State& state) {
  const Instance inst = generate_instance(50, 3);
  const ScoreTable scores = symmetrize(untrained_heatmap(inst), 1e-8);
  const int width = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beam_search(scores, width, 1e-8));
}
BENCHMARK(BM_BeamSearch)->Arg(1)->Arg(10)->Arg(100);

// The full inference path used by `solve`, with a fixed sample budget.
void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(n, 4);
  const Heatmap heatmap = untrained_heatmap(inst);
  SearchConfig config;
  config.samples = 200;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, heatmap, config, 1));
}
BENCHMARK(BM_Solve)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
