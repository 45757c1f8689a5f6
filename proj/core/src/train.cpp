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

#include "edgegae/train.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "edgegae/errors.hpp"
#include "edgegae/rng.hpp"

namespace edgegae {

void validate(const TrainConfig& config) {
  if (config.batch_size < 1) {
    throw std::invalid_argument("batch size must be at least 1");
  }
  if (!(config.lr > 0.0) || !std::isfinite(config.lr)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(config.pos_weight >= 0.0) || !std::isfinite(config.pos_weight)) {
    throw std::invalid_argument("pos_weight must be non-negative");
  }
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 >= 0.0 && config.beta2 < 1.0) || !(config.adam_eps > 0.0)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1), eps > 0");
  }
}

Trainer::Trainer(EdgeGae model, const TrainConfig& config,
                 const std::vector<Instance>& dataset)
    : model_(std::move(model)), config_(config) {
  validate(config_);
  prepare(dataset);
}

Trainer::Trainer(Checkpoint checkpoint, const std::vector<Instance>& dataset)
    : model_(std::move(checkpoint.model)) {
  const TrainingMeta& meta = checkpoint.meta;
  config_.batch_size = meta.batch_size;
  config_.lr = meta.lr;
  config_.sampling = parse_sampling_mode(meta.sampling);
  config_.pos_weight = meta.pos_weight;
  config_.seed = meta.seed;
  config_.beta1 = meta.beta1;
  config_.beta2 = meta.beta2;
  config_.adam_eps = meta.adam_eps;
  epoch_ = meta.epoch;
  validate(config_);
  prepare(dataset);
}

void Trainer::prepare(const std::vector<Instance>& dataset) {
  if (dataset.empty()) throw std::invalid_argument("training set is empty");
  graphs_.reserve(dataset.size());
  std::vector<int> sizes;
  sizes.reserve(dataset.size());
  for (const auto& instance : dataset) {
    if (!instance.optimal_tour) {
      throw std::invalid_argument("training instance " +
                                  std::to_string(instance.id) +
                                  " has no oracle tour");
    }
    graphs_.push_back(label_edges(knn_sparsify(instance, model_.config().knn),
                                  *instance.optimal_tour)
                          .graph);
    sizes.push_back(instance.n());
  }
  classes_ = build_class_index(sizes);
}

std::size_t Trainer::steps_per_epoch() const noexcept {
  return batches_per_epoch(graphs_.size(),
                           static_cast<std::size_t>(config_.batch_size));
}

std::vector<IndexBatch> Trainer::draw_batches() const {
  const auto batch = static_cast<std::size_t>(config_.batch_size);
  const std::uint64_t seed = derive_seed(config_.seed, epoch_);
  if (config_.sampling == SamplingMode::kActive) {
    return active_batches(classes_, batch, steps_per_epoch(), seed);
  }
  return shuffle_batches(graphs_.size(), batch, seed);
}

EpochStats Trainer::run_epoch() {
  const AdamConfig adam{config_.lr, config_.beta1, config_.beta2,
                        config_.adam_eps};
  double total = 0.0;
  std::size_t steps = 0;
  std::vector<const SparseGraph*> members;
  for (const IndexBatch& indices : draw_batches()) {
    members.clear();
    for (std::size_t i : indices) members.push_back(&graphs_[i]);
    const BatchedGraph batch = make_batch(members);
    const ForwardResult result =
        model_.forward(batch, Mode::kTrain, true, config_.pos_weight);
    if (!result.loss || !std::isfinite(*result.loss)) {
      model_.clear_tape();
      throw NumericError("non-finite training loss in epoch " +
                         std::to_string(epoch_ + 1) + ", step " +
                         std::to_string(steps + 1));
    }
    model_.backward();
    model_.clear_tape();
    adam_step(model_.params(), adam);
    total += *result.loss;
    ++steps;
  }
  ++epoch_;
  EpochStats stats;
  stats.epoch = epoch_;
  stats.steps = steps;
  stats.mean_loss = steps ? total / static_cast<double>(steps) : 0.0;
  return stats;
}

TrainingMeta Trainer::meta() const {
  TrainingMeta meta;
  meta.lr = config_.lr;
  meta.pos_weight = config_.pos_weight;
  meta.seed = config_.seed;
  meta.epoch = epoch_;
  meta.batch_size = config_.batch_size;
  meta.sampling = std::string(to_string(config_.sampling));
  meta.beta1 = config_.beta1;
  meta.beta2 = config_.beta2;
  meta.adam_eps = config_.adam_eps;
  return meta;
}

double eval_loss(const EdgeGae& model, const std::vector<Instance>& dataset,
                 double pos_weight) {
  if (dataset.empty()) return 0.0;
  double total = 0.0;
  for (const auto& instance : dataset) {
    if (!instance.optimal_tour) {
      throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                  " has no oracle tour");
    }
    const auto labelled = label_edges(
        knn_sparsify(instance, model.config().knn), *instance.optimal_tour);
    const BatchedGraph batch = make_batch(labelled.graph);
    const Eigen::VectorXd probs = model.infer(batch);
    total += bce_loss({probs.data(), static_cast<std::size_t>(probs.size())},
                      batch.labels, pos_weight);
  }
  return total / static_cast<double>(dataset.size());
}

}  // namespace edgegae
