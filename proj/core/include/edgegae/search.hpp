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

#ifndef EDGEGAE_SEARCH_HPP_
#define EDGEGAE_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "edgegae/tsp.hpp"

namespace edgegae {

/// Dense symmetric n x n node-to-node scores, row-major.
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(int n, double fill)
      : n_(n), values_(static_cast<std::size_t>(n) * n, fill) {}

  int n() const noexcept { return n_; }
  double operator()(int u, int v) const noexcept {
    return values_[static_cast<std::size_t>(u) * n_ + v];
  }
  double& operator()(int u, int v) noexcept {
    return values_[static_cast<std::size_t>(u) * n_ + v];
  }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

enum class SearchStrategy { kRoulette, kBeam };

SearchStrategy parse_search_strategy(std::string_view text);
std::string_view to_string(SearchStrategy strategy);

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::kRoulette;
  int samples = 200;
  int beam_width = 10;
  bool two_opt = true;
  double epsilon_prob = 1e-8;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a SearchConfig invariant fails.
void validate(const SearchConfig& config);

/// score(u,v) is the mean of whichever of p(u->v), p(v->u) exist, or
/// epsilon_prob when neither does. The diagonal is 0.
ScoreTable symmetrize(const Heatmap& heatmap, double epsilon_prob = 1e-8);

/// Random start, then each next city drawn from all unvisited cities with
/// probability proportional to its score from the current city.
Order roulette_tour(const ScoreTable& scores, std::uint64_t seed);

/// Final beams of a width-`beam_width` search from node 0, best first.
/// Partial tours are ranked by the sum of ln(max(score, epsilon_prob)),
/// ties by lexicographic order; the closing edge is included at the end.
std::vector<Order> beam_search(const ScoreTable& scores, int beam_width,
                               double epsilon_prob = 1e-8);

/// Highest-scoring tour of beam_search.
Order beam_tour(const ScoreTable& scores, int beam_width,
                double epsilon_prob = 1e-8);

/// Sum of ln(max(score, epsilon_prob)) over the closed cycle.
double log_score(const ScoreTable& scores, std::span<const int> order,
                 double epsilon_prob = 1e-8);

/// First-improvement 2-opt: scans (i, j) in order, applies every shortening
/// segment reversal immediately, and rescans until a full pass changes
/// nothing. Node order[0] stays in place.
Tour two_opt(const Instance& instance, Tour tour);

struct SolveStats {
  std::vector<double> sample_lengths;
  std::size_t best_sample = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  Tour tour;
  SolveStats stats;
};

/// Roulette: `samples` tours seeded by derive_seed(config.seed, s), each
/// optionally 2-opted, shortest kept (ties to the lower sample index).
/// Beam: the final beams are 2-opted if enabled and the shortest kept.
/// Returned tours are in canonical orientation.
SolveResult solve(const Instance& instance, const Heatmap& heatmap,
                  const SearchConfig& config, unsigned threads = 1);

/// Same, starting from an already symmetrised score table.
SolveResult solve(const Instance& instance, const ScoreTable& scores,
                  const SearchConfig& config, unsigned threads = 1);

}  // namespace edgegae

#endif  // EDGEGAE_SEARCH_HPP_
