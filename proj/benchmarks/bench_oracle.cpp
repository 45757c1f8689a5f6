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

#include "edgegae/oracle.hpp"
#include "edgegae/tsp.hpp"

namespace {

using namespace edgegae;

void BM_HeldKarp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(held_karp(inst, kMaxExactCities));
}
BENCHMARK(BM_HeldKarp)->DenseRange(10, 18, 2)->Unit(benchmark::kMillisecond);

void BM_HeuristicOracle(benchmark::State& state) {
  const Instance inst = generate_instance(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(heuristic_oracle(inst, 20, 1));
}
BENCHMARK(BM_HeuristicOracle)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_KnnSparsify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(knn_sparsify(inst, 25));
  state.SetComplexityN(n);
}
BENCHMARK(BM_KnnSparsify)->RangeMultiplier(4)->Range(32, 2048)->Complexity();

void BM_AllocateCounts(benchmark::State& state) {
  DatasetSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(allocate_counts(spec));
}
BENCHMARK(BM_AllocateCounts);

}  // namespace
