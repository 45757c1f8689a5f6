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

#ifndef EDGEGAE_TRAIN_HPP_
#define EDGEGAE_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgegae/checkpoint.hpp"
#include "edgegae/model.hpp"
#include "edgegae/nn.hpp"
#include "edgegae/sampler.hpp"
#include "edgegae/tsp.hpp"

namespace edgegae {

struct TrainConfig {
  int batch_size = 32;
  double lr = 1e-3;
  SamplingMode sampling = SamplingMode::kShuffle;
  double pos_weight = 1.0;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
};

/// Throws std::invalid_argument on a non-positive batch size or learning
/// rate, or a negative pos_weight.
void validate(const TrainConfig& config);

struct EpochStats {
  std::uint64_t epoch = 0;  // 1-based count of completed epochs
  double mean_loss = 0.0;
  std::size_t steps = 0;
};

/// Mini-batch Adam on BCE over labelled k-NN graphs.
///
/// Epoch e draws its batches from derive_seed(seed, e), so a trainer rebuilt
/// from a checkpoint continues the exact sequence it would have produced.
class Trainer {
 public:
  /// Every instance must carry an oracle tour.
  Trainer(EdgeGae model, const TrainConfig& config,
          const std::vector<Instance>& dataset);

  /// Continues after checkpoint.meta.epoch completed epochs.
  Trainer(Checkpoint checkpoint, const std::vector<Instance>& dataset);

  /// Throws NumericError when a batch loss is not finite.
  EpochStats run_epoch();

  const EdgeGae& model() const noexcept { return model_; }
  EdgeGae& model() noexcept { return model_; }
  const TrainConfig& config() const noexcept { return config_; }
  std::uint64_t epochs_done() const noexcept { return epoch_; }
  std::size_t steps_per_epoch() const noexcept;

  TrainingMeta meta() const;

 private:
  void prepare(const std::vector<Instance>& dataset);
  std::vector<IndexBatch> draw_batches() const;

  EdgeGae model_;
  TrainConfig config_;
  std::uint64_t epoch_ = 0;
  std::vector<SparseGraph> graphs_;
  ClassIndex classes_;
};

/// Mean BCE over single-instance eval-mode passes.
double eval_loss(const EdgeGae& model, const std::vector<Instance>& dataset,
                 double pos_weight = 1.0);

}  // namespace edgegae

#endif  // EDGEGAE_TRAIN_HPP_
