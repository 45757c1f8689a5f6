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

#ifndef EDGEGAE_SAMPLER_HPP_
#define EDGEGAE_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace edgegae {

using IndexBatch = std::vector<std::size_t>;

/// Dataset indices grouped by instance size.
struct ClassIndex {
  std::map<int, std::vector<std::size_t>> classes;
  std::vector<int> class_keys;  // sorted sizes with at least one instance
};

/// `sizes[i]` is the city count of dataset item i.
ClassIndex build_class_index(std::span<const int> sizes);

/// One epoch: a uniform random permutation of 0..dataset_size-1 cut into
/// batches of `batch_size` (the last one may be short). Throws
/// std::invalid_argument for batch_size < 1.
std::vector<IndexBatch> shuffle_batches(std::size_t dataset_size,
                                        std::size_t batch_size,
                                        std::uint64_t seed);

/// Two-step class-balanced sampling: each batch draws `batch_size` sizes
/// uniformly with replacement from the represented sizes, then one instance
/// uniformly with replacement from each drawn size. Throws
/// std::invalid_argument when no class is represented or batch_size < 1.
std::vector<IndexBatch> active_batches(const ClassIndex& index,
                                       std::size_t batch_size,
                                       std::size_t batches_per_epoch,
                                       std::uint64_t seed);

/// ceil(dataset_size / batch_size): both samplers take this many steps per
/// epoch.
std::size_t batches_per_epoch(std::size_t dataset_size, std::size_t batch_size);

enum class SamplingMode { kShuffle, kActive };

SamplingMode parse_sampling_mode(std::string_view text);
std::string_view to_string(SamplingMode mode);

}  // namespace edgegae

#endif  // EDGEGAE_SAMPLER_HPP_
