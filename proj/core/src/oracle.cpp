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

#include "edgegae/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "edgegae/errors.hpp"
#include "edgegae/parallel.hpp"
#include "edgegae/rng.hpp"
#include "edgegae/search.hpp"

namespace edgegae {

Tour held_karp(const Instance& instance, int cutoff) {
  if (cutoff > kMaxExactCities) {
    throw std::invalid_argument("exact cutoff " + std::to_string(cutoff) +
                                " exceeds the supported maximum " +
                                std::to_string(kMaxExactCities));
  }
  const int n = instance.n();
  if (n < kMinCities) {
    throw std::invalid_argument("held_karp needs at least 4 cities");
  }
  if (n > cutoff) {
    throw CapacityError("instance with " + std::to_string(n) +
                        " cities exceeds the exact cutoff of " +
                        std::to_string(cutoff) + "; use heuristic mode");
  }

  // Node 0 is the fixed start; bit b of a mask stands for node b + 1.
  const int m = n - 1;
  const std::size_t masks = std::size_t{1} << m;
  const auto um = static_cast<std::size_t>(m);
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dist[static_cast<std::size_t>(a) * n + b] =
          distance(instance.coords[static_cast<std::size_t>(a)],
                   instance.coords[static_cast<std::size_t>(b)]);
    }
  }
  auto d = [&](int a, int b) { return dist[static_cast<std::size_t>(a) * n + b]; };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[mask * m + j]: shortest path 0 -> ... -> j+1 through exactly `mask`.
  std::vector<double> cost(masks * um, kInf);
  for (int j = 0; j < m; ++j) {
    cost[(std::size_t{1} << j) * um + static_cast<std::size_t>(j)] = d(0, j + 1);
  }
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    double* row = &cost[mask * um];
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1)) continue;
      const std::size_t prev_mask = mask ^ (std::size_t{1} << j);
      const double* prev = &cost[prev_mask * um];
      const double* dj = &dist[static_cast<std::size_t>(j + 1) * n + 1];
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        if (!(prev_mask >> i & 1)) continue;
        const double c = prev[i] + dj[i];
        if (c < best) best = c;
      }
      row[j] = best;
    }
  }

  // Close the cycle, then walk predecessors back. Every value is recomputed
  // with the same expression, so equality tests are exact.
  const std::size_t full = masks - 1;
  double best = kInf;
  int last = 0;
  for (int j = 0; j < m; ++j) {
    const double c = cost[full * um + static_cast<std::size_t>(j)] + d(j + 1, 0);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  Order order;
  order.reserve(static_cast<std::size_t>(n));
  std::size_t mask = full;
  int j = last;
  while (true) {
    order.push_back(j + 1);
    const std::size_t prev_mask = mask ^ (std::size_t{1} << j);
    if (prev_mask == 0) break;
    const double target = cost[mask * um + static_cast<std::size_t>(j)];
    int pred = -1;
    for (int i = 0; i < m; ++i) {
      if (!(prev_mask >> i & 1)) continue;
      if (cost[prev_mask * um + static_cast<std::size_t>(i)] + d(i + 1, j + 1) ==
          target) {
        pred = i;
        break;
      }
    }
    mask = prev_mask;
    j = pred;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return make_tour(instance, canonical_order(std::move(order)));
}

Tour heuristic_oracle(const Instance& instance, int restarts,
                      std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const int n = instance.n();
  Tour best;
  best.length = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Order order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.below(i + 1)]);
    }
    Tour tour = two_opt(instance, make_tour(instance, std::move(order)));
    if (tour.length < best.length) best = std::move(tour);
  }
  return make_tour(instance, canonical_order(std::move(best.order)));
}

OracleMode parse_oracle_mode(std::string_view text) {
  if (text == "exact") return OracleMode::kExact;
  if (text == "heuristic") return OracleMode::kHeuristic;
  if (text == "auto") return OracleMode::kAuto;
  throw std::invalid_argument("unknown oracle mode '" + std::string(text) +
                              "'");
}

std::string_view to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::kExact: return "exact";
    case OracleMode::kHeuristic: return "heuristic";
    case OracleMode::kAuto: return "auto";
  }
  return "auto";
}

std::vector<std::size_t> allocate_counts(const DatasetSpec& spec) {
  if (spec.n_min < kMinCities || spec.n_min > spec.n_max) {
    throw std::invalid_argument("need 4 <= n_min <= n_max, got " +
                                std::to_string(spec.n_min) + ".." +
                                std::to_string(spec.n_max));
  }
  const auto sizes = static_cast<std::size_t>(spec.n_max - spec.n_min + 1);
  if (spec.total < sizes) {
    throw std::invalid_argument(
        "total " + std::to_string(spec.total) + " is smaller than the " +
        std::to_string(sizes) + " sizes in " + std::to_string(spec.n_min) +
        ".." + std::to_string(spec.n_max));
  }
  double harmonic = 0.0;
  for (int n = spec.n_min; n <= spec.n_max; ++n) harmonic += 1.0 / n;
  const double scale = static_cast<double>(spec.total) / harmonic;

  std::vector<std::size_t> counts(sizes);
  std::vector<std::pair<double, std::size_t>> remainders(sizes);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < sizes; ++i) {
    const double exact = scale / (spec.n_min + static_cast<int>(i));
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = {exact - static_cast<double>(counts[i]), i};
    assigned += counts[i];
  }
  // Largest fractional part first; ties go to the smaller size.
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
  for (std::size_t r = 0; assigned < spec.total; ++r, ++assigned) {
    ++counts[remainders[r % sizes].second];
  }
  return counts;
}

Tour label_instance(const Instance& instance, const DatasetSpec& spec,
                    std::uint64_t seed) {
  const bool exact =
      spec.oracle == OracleMode::kExact ||
      (spec.oracle == OracleMode::kAuto && instance.n() <= spec.exact_cutoff);
  if (exact) return held_karp(instance, spec.exact_cutoff);
  return heuristic_oracle(instance, spec.heuristic_restarts, seed);
}

std::vector<Instance> build_dataset(const DatasetSpec& spec, unsigned threads) {
  const auto counts = allocate_counts(spec);
  if (spec.oracle == OracleMode::kExact && spec.n_max > spec.exact_cutoff) {
    throw CapacityError("exact labels requested up to n=" +
                        std::to_string(spec.n_max) + " but the cutoff is " +
                        std::to_string(spec.exact_cutoff));
  }
  std::vector<int> sizes;
  sizes.reserve(spec.total);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    sizes.insert(sizes.end(), counts[i], spec.n_min + static_cast<int>(i));
  }
  std::vector<Instance> out(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(spec.seed, i);
    Instance instance = generate_instance(sizes[i], seed);
    instance.id = i;
    instance.optimal_tour = label_instance(instance, spec, mix64(seed));
    out[i] = std::move(instance);
  });
  return out;
}

}  // namespace edgegae
