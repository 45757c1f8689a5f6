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

#ifndef EDGEGAE_TESTS_FIXTURES_HPP_
#define EDGEGAE_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "edgegae/model.hpp"
#include "edgegae/oracle.hpp"
#include "edgegae/rng.hpp"
#include "edgegae/tsp.hpp"

namespace fixtures {

inline edgegae::Instance solved_instance(int n, std::uint64_t seed) {
  edgegae::Instance inst = edgegae::generate_instance(n, seed);
  inst.optimal_tour = edgegae::held_karp(inst, std::max(n, 4));
  return inst;
}

inline std::vector<edgegae::Instance> solved_set(int count, int n_min, int n_max,
                                                 std::uint64_t seed) {
  std::vector<edgegae::Instance> out;
  for (int i = 0; i < count; ++i) {
    const int n = n_min + i % (n_max - n_min + 1);
    edgegae::Instance inst = solved_instance(n, edgegae::derive_seed(seed, i));
    inst.id = static_cast<std::uint64_t>(i);
    out.push_back(std::move(inst));
  }
  return out;
}

inline edgegae::SparseGraph labelled_graph(const edgegae::Instance& inst, int k) {
  return edgegae::label_edges(edgegae::knn_sparsify(inst, k), *inst.optimal_tour)
      .graph;
}

// Node i of the input becomes node perm[i] of the result.
inline edgegae::Instance relabel(const edgegae::Instance& inst,
                                 const std::vector<int>& perm) {
  edgegae::Instance out = inst;
  for (int i = 0; i < inst.n(); ++i) out.coords[perm[i]] = inst.coords[i];
  out.optimal_tour.reset();
  return out;
}

inline std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  edgegae::Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  return perm;
}

inline std::map<std::pair<int, int>, double> edge_probs(const edgegae::Heatmap& h) {
  std::map<std::pair<int, int>, double> out;
  for (std::size_t m = 0; m < h.edges.size(); ++m) {
    out[{h.edges[m].src, h.edges[m].dst}] = h.probs[m];
  }
  return out;
}

// Zeroes every convolution, decoder and MLP weight (and MLP bias).
inline void zero_weights(edgegae::EdgeGae& model) {
  for (auto& p : model.params().entries()) {
    const std::string& name = p.name;
    const bool conv = name.rfind("layer.", 0) == 0;
    const bool dec = name.rfind("decoder.", 0) == 0;
    const bool mlp = name.rfind("mlp.", 0) == 0;
    const bool beta = name.size() > 5 && name.compare(name.size() - 5, 5, ".beta") == 0;
    if (conv || dec || mlp || beta) p.value.fill(0.0);
  }
}

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
};

// Central differences of the train-mode loss with respect to every scalar
// of every parameter; relative error |a - n| / max(|n|, 1e-8).
inline GradCheckResult gradient_check(edgegae::EdgeGae& model,
                                      const edgegae::BatchedGraph& batch,
                                      double h = 1e-6, double pos_weight = 1.0) {
  using edgegae::Mode;
  model.params().zero_grad();
  model.forward(batch, Mode::kTrain, true, pos_weight);
  model.backward();
  model.clear_tape();
  GradCheckResult result;
  for (auto& p : model.params().entries()) {
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double original = p.value[i];
      p.value[i] = original + h;
      const double up = *model.forward(batch, Mode::kTrain, true, pos_weight).loss;
      p.value[i] = original - h;
      const double down = *model.forward(batch, Mode::kTrain, true, pos_weight).loss;
      p.value[i] = original;
      model.clear_tape();
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = p.grad[i];
      const double rel =
          std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-8);
      ++result.checked;
      if (rel > result.max_rel_error || result.worst_param.empty()) {
        if (rel >= result.max_rel_error) {
          result.max_rel_error = rel;
          result.worst_param = p.name;
          result.worst_index = i;
          result.worst_analytic = analytic;
          result.worst_numeric = numeric;
        }
      }
    }
  }
  model.params().zero_grad();
  return result;
}

}  // namespace fixtures

#endif  // EDGEGAE_TESTS_FIXTURES_HPP_
