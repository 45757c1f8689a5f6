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

#include <vector>

#include "edgegae/model.hpp"
#include "edgegae/nn.hpp"
#include "edgegae/oracle.hpp"

namespace {

using namespace edgegae;

void BM_InferHeatmap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EdgeGae model(ModelConfig{}, 1);
  const SparseGraph graph = knn_sparsify(generate_instance(n, 7), model.config().knn);
  for (auto _ : state) benchmark::DoNotOptimize(predict_heatmap(model, graph));
  state.SetComplexityN(n);
}
BENCHMARK(BM_InferHeatmap)->RangeMultiplier(2)->Range(8, 128)->Complexity();

// One optimiser step on a batch of 32 labelled graphs of size n.
void BM_TrainStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  EdgeGae model(ModelConfig{}, 1);
  std::vector<SparseGraph> graphs;
  for (int i = 0; i < 32; ++i) {
    const Instance inst = generate_instance(n, 100 + i);
    graphs.push_back(label_edges(knn_sparsify(inst, model.config().knn),
                                 heuristic_oracle(inst, 2, i))
                         .graph);
  }
  std::vector<const SparseGraph*> ptrs;
  for (const auto& g : graphs) ptrs.push_back(&g);
  const BatchedGraph batch = make_batch(ptrs);
  for (auto _ : state) {
    model.forward(batch, Mode::kTrain, true);
    model.backward();
    model.clear_tape();
    adam_step(model.params(), AdamConfig{});
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_TrainStep)->Arg(10)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Linear(benchmark::State& state) {
  const auto rows = static_cast<Eigen::Index>(state.range(0));
  Rng rng(3);
  Tensor w({64, 64});
  xavier_uniform(w, 64, 64, rng);
  RowMatrix x = RowMatrix::Random(rows, 64);
  for (auto _ : state) benchmark::DoNotOptimize(linear(x, w));
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_Linear)->Arg(256)->Arg(4096);

}  // namespace
