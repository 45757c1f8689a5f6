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

#ifndef EDGEGAE_CHECKPOINT_HPP_
#define EDGEGAE_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "edgegae/model.hpp"

namespace edgegae {

// Binary layout, all integers little-endian:
//   "EGAE" | u32 version | u32 len + JSON config | u32 tensor count |
//   per tensor: u16 len + name, u8 rank, u32 dims..., f64 payload.
// Tensors: every model parameter under its own name, BN running statistics
// as bn.<layer>.<node|edge>.{mean,var}, Adam moments as adam.{m,v}.<name>.

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Training settings stored next to the weights so a run can be resumed.
struct TrainingMeta {
  double lr = 1e-3;
  double pos_weight = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
  int batch_size = 32;
  std::string sampling = "shuffle";
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct Checkpoint {
  EdgeGae model;
  TrainingMeta meta;
};

void save_checkpoint(std::ostream& out, const EdgeGae& model,
                     const TrainingMeta& meta);
/// Writes to a temporary sibling file, then renames over `path`.
void save_checkpoint(const std::filesystem::path& path, const EdgeGae& model,
                     const TrainingMeta& meta);

/// Throws FormatError on bad magic, version, truncation, shape mismatch,
/// and unknown or missing tensor names. Nothing is returned on failure.
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace edgegae

#endif  // EDGEGAE_CHECKPOINT_HPP_
