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

#include "edgegae/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "edgegae/parallel.hpp"
#include "edgegae/rng.hpp"

namespace edgegae {
namespace {

// A reversal must shorten the tour by more than this to be accepted, so
// rounding noise cannot make 2-opt cycle.
constexpr double kImprovementTolerance = 1e-12;

struct Beam {
  Order path;
  std::vector<bool> visited;
  double score = 0.0;
};

// Higher score first, then lexicographically smaller path.
bool beam_before(double score_a, std::span<const int> a, double score_b,
                 std::span<const int> b) {
  if (score_a != score_b) return score_a > score_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SearchStrategy parse_search_strategy(std::string_view text) {
  if (text == "roulette") return SearchStrategy::kRoulette;
  if (text == "beam") return SearchStrategy::kBeam;
  throw std::invalid_argument("unknown search strategy '" + std::string(text) +
                              "'");
}

std::string_view to_string(SearchStrategy strategy) {
  return strategy == SearchStrategy::kBeam ? "beam" : "roulette";
}

void validate(const SearchConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (config.beam_width < 1) {
    throw std::invalid_argument("beam width must be >= 1");
  }
  if (!(config.epsilon_prob > 0.0)) {
    throw std::invalid_argument("epsilon_prob must be positive");
  }
}

ScoreTable symmetrize(const Heatmap& heatmap, double epsilon_prob) {
  const int n = heatmap.n;
  ScoreTable sum(n, 0.0);
  std::vector<int> count(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t e = 0; e < heatmap.edges.size(); ++e) {
    const auto [u, v] = heatmap.edges[e];
    if (u == v) continue;
    sum(u, v) += heatmap.probs[e];
    sum(v, u) += heatmap.probs[e];
    ++count[static_cast<std::size_t>(u) * n + v];
    ++count[static_cast<std::size_t>(v) * n + u];
  }
  ScoreTable scores(n, epsilon_prob);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int c = count[static_cast<std::size_t>(u) * n + v];
      if (u == v) scores(u, v) = 0.0;
      else if (c > 0) scores(u, v) = sum(u, v) / c;
    }
  }
  return scores;
}

Order roulette_tour(const ScoreTable& scores, std::uint64_t seed) {
  const int n = scores.n();
  Rng rng(seed);
  Order order;
  order.reserve(static_cast<std::size_t>(n));
  // Unvisited cities, kept in increasing index order for a stable scan.
  std::vector<int> open(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) open[static_cast<std::size_t>(i)] = i;

  auto take = [&](std::size_t slot) {
    order.push_back(open[slot]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(slot));
  };
  take(static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n))));
  while (!open.empty()) {
    const int current = order.back();
    double total = 0.0;
    for (int v : open) total += scores(current, v);
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t pick = open.size() - 1;
    for (std::size_t s = 0; s < open.size(); ++s) {
      cumulative += scores(current, open[s]);
      if (target < cumulative) {
        pick = s;
        break;
      }
    }
    take(pick);
  }
  return order;
}

double log_score(const ScoreTable& scores, std::span<const int> order,
                 double epsilon_prob) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int a = order[i];
    const int b = order[(i + 1) % order.size()];
    total += std::log(std::max(scores(a, b), epsilon_prob));
  }
  return total;
}

std::vector<Order> beam_search(const ScoreTable& scores, int beam_width,
                               double epsilon_prob) {
  if (beam_width < 1) throw std::invalid_argument("beam width must be >= 1");
  const int n = scores.n();
  auto ln = [&](int a, int b) {
    return std::log(std::max(scores(a, b), epsilon_prob));
  };

  std::vector<Beam> beams(1);
  beams[0].path = {0};
  beams[0].visited.assign(static_cast<std::size_t>(n), false);
  beams[0].visited[0] = true;

  struct Candidate {
    std::size_t beam;
    int next;
    double score;
  };
  std::vector<Candidate> candidates;
  std::vector<int> path_a;
  std::vector<int> path_b;
  for (int depth = 1; depth < n; ++depth) {
    candidates.clear();
    for (std::size_t b = 0; b < beams.size(); ++b) {
      const int last = beams[b].path.back();
      for (int v = 0; v < n; ++v) {
        if (beams[b].visited[static_cast<std::size_t>(v)]) continue;
        candidates.push_back({b, v, beams[b].score + ln(last, v)});
      }
    }
    const auto keep = std::min<std::size_t>(
        static_cast<std::size_t>(beam_width), candidates.size());
    auto before = [&](const Candidate& x, const Candidate& y) {
      if (x.score != y.score) return x.score > y.score;
      // Compare the extended paths lexicographically.
      const auto& px = beams[x.beam].path;
      const auto& py = beams[y.beam].path;
      if (x.beam != y.beam) {
        return std::lexicographical_compare(px.begin(), px.end(), py.begin(),
                                            py.end());
      }
      return x.next < y.next;
    };
    std::partial_sort(candidates.begin(),
                      candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), before);
    std::vector<Beam> next_beams;
    next_beams.reserve(keep);
    for (std::size_t c = 0; c < keep; ++c) {
      Beam beam = beams[candidates[c].beam];
      beam.path.push_back(candidates[c].next);
      beam.visited[static_cast<std::size_t>(candidates[c].next)] = true;
      beam.score = candidates[c].score;
      next_beams.push_back(std::move(beam));
    }
    beams = std::move(next_beams);
  }
  for (auto& beam : beams) beam.score += ln(beam.path.back(), beam.path.front());
  std::sort(beams.begin(), beams.end(), [](const Beam& x, const Beam& y) {
    return beam_before(x.score, x.path, y.score, y.path);
  });
  std::vector<Order> out;
  out.reserve(beams.size());
  for (auto& beam : beams) out.push_back(std::move(beam.path));
  return out;
}

Order beam_tour(const ScoreTable& scores, int beam_width,
                double epsilon_prob) {
  return beam_search(scores, beam_width, epsilon_prob).front();
}

Tour two_opt(const Instance& instance, Tour tour) {
  const int n = instance.n();
  auto& t = tour.order;
  if (!is_permutation(t, n)) {
    throw std::invalid_argument("two_opt needs a valid tour");
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dist[static_cast<std::size_t>(a) * n + b] =
          distance(instance.coords[static_cast<std::size_t>(a)],
                   instance.coords[static_cast<std::size_t>(b)]);
    }
  }
  auto d = [&](int a, int b) { return dist[static_cast<std::size_t>(a) * n + b]; };

  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 1; i <= n - 2; ++i) {
      for (int j = i + 1; j <= n - 1; ++j) {
        const int a = t[static_cast<std::size_t>(i - 1)];
        const int b = t[static_cast<std::size_t>(i)];
        const int c = t[static_cast<std::size_t>(j)];
        const int e = t[static_cast<std::size_t>((j + 1) % n)];
        const double delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
        if (delta < -kImprovementTolerance) {
          std::reverse(t.begin() + i, t.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  tour.length = tour_length(instance, t);
  return tour;
}

SolveResult solve(const Instance& instance, const Heatmap& heatmap,
                  const SearchConfig& config, unsigned threads) {
  if (heatmap.n != instance.n()) {
    throw std::invalid_argument("heatmap was built for " +
                                std::to_string(heatmap.n) +
                                " nodes, instance has " +
                                std::to_string(instance.n()));
  }
  return solve(instance, symmetrize(heatmap, config.epsilon_prob), config,
               threads);
}

SolveResult solve(const Instance& instance, const ScoreTable& scores,
                  const SearchConfig& config, unsigned threads) {
  validate(config);
  if (scores.n() != instance.n()) {
    throw std::invalid_argument("score table size does not match instance");
  }
  const auto start = std::chrono::steady_clock::now();

  std::vector<Tour> tours;
  if (config.strategy == SearchStrategy::kRoulette) {
    tours.resize(static_cast<std::size_t>(config.samples));
    parallel_for(tours.size(), threads, [&](std::size_t s) {
      Tour tour = make_tour(
          instance, roulette_tour(scores, derive_seed(config.seed, s)));
      if (config.two_opt) tour = two_opt(instance, std::move(tour));
      tours[s] = make_tour(instance, canonical_order(std::move(tour.order)));
    });
  } else {
    auto beams = beam_search(scores, config.beam_width, config.epsilon_prob);
    tours.resize(beams.size());
    parallel_for(tours.size(), threads, [&](std::size_t s) {
      Tour tour = make_tour(instance, std::move(beams[s]));
      if (config.two_opt) tour = two_opt(instance, std::move(tour));
      tours[s] = make_tour(instance, canonical_order(std::move(tour.order)));
    });
  }

  SolveResult result;
  result.stats.sample_lengths.reserve(tours.size());
  for (std::size_t s = 0; s < tours.size(); ++s) {
    result.stats.sample_lengths.push_back(tours[s].length);
    if (tours[s].length < tours[result.stats.best_sample].length) {
      result.stats.best_sample = s;
    }
  }
  result.tour = std::move(tours[result.stats.best_sample]);
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace edgegae
