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

#include "edgegae/sampler.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "edgegae/rng.hpp"

namespace edgegae {

ClassIndex build_class_index(std::span<const int> sizes) {
  ClassIndex index;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    index.classes[sizes[i]].push_back(i);
  }
  for (const auto& [n, items] : index.classes) index.class_keys.push_back(n);
  return index;
}

std::size_t batches_per_epoch(std::size_t dataset_size,
                              std::size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  return (dataset_size + batch_size - 1) / batch_size;
}

std::vector<IndexBatch> shuffle_batches(std::size_t dataset_size,
                                        std::size_t batch_size,
                                        std::uint64_t seed) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  std::vector<std::size_t> order(dataset_size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = dataset_size; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<IndexBatch> batches;
  for (std::size_t start = 0; start < dataset_size; start += batch_size) {
    const std::size_t end = std::min(dataset_size, start + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

std::vector<IndexBatch> active_batches(const ClassIndex& index,
                                       std::size_t batch_size,
                                       std::size_t batches_per_epoch,
                                       std::uint64_t seed) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  if (index.class_keys.empty()) {
    throw std::invalid_argument("active sampling needs a non-empty class");
  }
  Rng rng(seed);
  const auto classes = static_cast<std::uint64_t>(index.class_keys.size());
  std::vector<IndexBatch> batches(batches_per_epoch);
  for (auto& batch : batches) {
    batch.reserve(batch_size);
    for (std::size_t b = 0; b < batch_size; ++b) {
      const int key = index.class_keys[rng.below(classes)];
      const auto& members = index.classes.at(key);
      batch.push_back(members[rng.below(members.size())]);
    }
  }
  return batches;
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "shuffle") return SamplingMode::kShuffle;
  if (text == "active") return SamplingMode::kActive;
  throw std::invalid_argument("unknown sampling mode '" + std::string(text) +
                              "'");
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::kActive ? "active" : "shuffle";
}

}  // namespace edgegae
