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

#include "edgegae/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "edgegae/rng.hpp"

namespace edgegae {

double distance(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Instance generate_instance(int n, std::uint64_t seed) {
  if (n < kMinCities) {
    throw std::invalid_argument("instance needs at least " +
                                std::to_string(kMinCities) + " cities, got " +
                                std::to_string(n));
  }
  Rng rng(seed);
  Instance instance;
  instance.coords.resize(static_cast<std::size_t>(n));
  for (auto& p : instance.coords) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return instance;
}

bool is_permutation(std::span<const int> order, int n) {
  if (n < 0 || order.size() != static_cast<std::size_t>(n)) return false;
  std::vector<bool> seen(order.size(), false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

void validate(const Instance& instance) {
  if (instance.n() < kMinCities) {
    throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                " has " + std::to_string(instance.n()) +
                                " cities; minimum is " +
                                std::to_string(kMinCities));
  }
  for (const auto& p : instance.coords) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                  " has a coordinate outside [0,1]");
    }
  }
  if (instance.optimal_tour &&
      !is_permutation(instance.optimal_tour->order, instance.n())) {
    throw std::invalid_argument("instance " + std::to_string(instance.id) +
                                " carries a tour that is not a permutation");
  }
}

double tour_length(std::span<const Point> coords, std::span<const int> order) {
  const int n = static_cast<int>(coords.size());
  if (!is_permutation(order, n)) {
    throw std::invalid_argument("tour is not a permutation of 0.." +
                                std::to_string(n - 1));
  }
  double length = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t next = i + 1 == order.size() ? 0 : i + 1;
    length += distance(coords[static_cast<std::size_t>(order[i])],
                       coords[static_cast<std::size_t>(order[next])]);
  }
  return length;
}

double tour_length(const Instance& instance, std::span<const int> order) {
  return tour_length(std::span<const Point>(instance.coords), order);
}

Tour make_tour(const Instance& instance, Order order) {
  Tour tour;
  tour.length = tour_length(instance, order);
  tour.order = std::move(order);
  return tour;
}

Order canonical_order(Order order) {
  if (order.empty()) return order;
  const auto zero = std::find(order.begin(), order.end(), 0);
  if (zero != order.end()) std::rotate(order.begin(), zero, order.end());
  if (order.size() > 2 && order[1] > order.back()) {
    std::reverse(order.begin() + 1, order.end());
  }
  return order;
}

SparseGraph knn_sparsify(const Instance& instance, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int n = instance.n();
  const int degree = std::min(k, n - 1);

  SparseGraph graph;
  graph.n = n;
  graph.node_feat = instance.coords;
  graph.edges.reserve(static_cast<std::size_t>(n) * degree);
  graph.edge_feat.reserve(graph.edges.capacity());

  std::vector<std::pair<double, int>> candidates;
  candidates.reserve(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    candidates.clear();
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      candidates.emplace_back(
          distance(instance.coords[static_cast<std::size_t>(u)],
                   instance.coords[static_cast<std::size_t>(v)]),
          v);
    }
    // pair ordering breaks distance ties by smaller index.
    std::partial_sort(candidates.begin(), candidates.begin() + degree,
                      candidates.end());
    for (int r = 0; r < degree; ++r) {
      graph.edges.push_back({u, candidates[static_cast<std::size_t>(r)].second});
      graph.edge_feat.push_back(candidates[static_cast<std::size_t>(r)].first);
    }
  }
  return graph;
}

LabeledGraph label_edges(SparseGraph graph, const Tour& optimal) {
  const int n = graph.n;
  if (static_cast<int>(optimal.order.size()) != n) {
    throw std::invalid_argument("tour has " +
                                std::to_string(optimal.order.size()) +
                                " nodes but the graph has " + std::to_string(n));
  }
  if (!is_permutation(optimal.order, n)) {
    throw std::invalid_argument("optimal tour is not a permutation");
  }
  // Each node's two cycle neighbours.
  std::vector<int> prev(static_cast<std::size_t>(n));
  std::vector<int> next(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int a = optimal.order[static_cast<std::size_t>(i)];
    const int b = optimal.order[static_cast<std::size_t>((i + 1) % n)];
    next[static_cast<std::size_t>(a)] = b;
    prev[static_cast<std::size_t>(b)] = a;
  }
  auto adjacent = [&](int u, int v) {
    return next[static_cast<std::size_t>(u)] == v ||
           prev[static_cast<std::size_t>(u)] == v;
  };

  std::vector<std::uint8_t> labels(graph.edges.size(), 0);
  // Covered undirected tour edges, keyed by the tour position of the edge.
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    position[static_cast<std::size_t>(optimal.order[static_cast<std::size_t>(i)])] = i;
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [u, v] = graph.edges[e];
    if (!adjacent(u, v)) continue;
    labels[e] = 1;
    const int pu = position[static_cast<std::size_t>(u)];
    const int pv = position[static_cast<std::size_t>(v)];
    // Tour edge between positions p and p+1 (mod n) is indexed by p.
    const int slot = (pu + 1) % n == pv ? pu : pv;
    covered[static_cast<std::size_t>(slot)] = true;
  }
  graph.labels = std::move(labels);

  LabeledGraph result;
  result.coverage_deficit = static_cast<std::size_t>(
      std::count(covered.begin(), covered.end(), false));
  result.graph = std::move(graph);
  return result;
}

}  // namespace edgegae
