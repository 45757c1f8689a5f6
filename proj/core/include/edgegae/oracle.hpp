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

#ifndef EDGEGAE_ORACLE_HPP_
#define EDGEGAE_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "edgegae/tsp.hpp"

namespace edgegae {

/// Default largest instance solved exactly.
inline constexpr int kExactCutoff = 18;
/// Hard memory ceiling for the DP table (2^(n-1) * (n-1) doubles).
inline constexpr int kMaxExactCities = 21;

/// Optimal tour by the Held-Karp dynamic program, in canonical orientation.
/// Throws CapacityError when n > cutoff and std::invalid_argument when the
/// cutoff itself exceeds kMaxExactCities.
Tour held_karp(const Instance& instance, int cutoff = kExactCutoff);

/// Best of `restarts` runs of random permutation followed by 2-opt.
Tour heuristic_oracle(const Instance& instance, int restarts,
                      std::uint64_t seed);

enum class OracleMode { kExact, kHeuristic, kAuto };

OracleMode parse_oracle_mode(std::string_view text);
std::string_view to_string(OracleMode mode);

struct DatasetSpec {
  int n_min = 50;
  int n_max = 500;
  std::size_t total = 50000;
  std::uint64_t seed = 0;
  OracleMode oracle = OracleMode::kAuto;
  int exact_cutoff = kExactCutoff;
  int heuristic_restarts = 20;
};

/// Per-size counts proportional to 1/n, rounded by largest remainder so they
/// sum to spec.total. Entry i is the count for n_min + i. Throws
/// std::invalid_argument when the range is invalid or total is smaller than
/// the number of sizes.
std::vector<std::size_t> allocate_counts(const DatasetSpec& spec);

/// Generates and labels every instance of the allocation, sorted by size.
/// Instance i uses derive_seed(spec.seed, i), so the output is independent
/// of `threads`.
std::vector<Instance> build_dataset(const DatasetSpec& spec,
                                    unsigned threads = 1);

/// The oracle tour `spec` would attach to `instance`.
Tour label_instance(const Instance& instance, const DatasetSpec& spec,
                    std::uint64_t seed);

}  // namespace edgegae

#endif  // EDGEGAE_ORACLE_HPP_
