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

#ifndef EDGEGAE_TSP_HPP_
#define EDGEGAE_TSP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace edgegae {

/// Smallest supported instance. Below four cities every tour is optimal and
/// 2-opt has nothing to exchange.
inline constexpr int kMinCities = 4;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b) noexcept;

/// Visiting order; a permutation of 0..n-1 read as a closed cycle.
using Order = std::vector<int>;

struct Tour {
  Order order;
  double length = 0.0;
};

/// Euclidean TSP instance in the unit square.
struct Instance {
  std::uint64_t id = 0;
  std::vector<Point> coords;
  std::optional<Tour> optimal_tour;

  int n() const noexcept { return static_cast<int>(coords.size()); }
};

struct Edge {
  int src = 0;
  int dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed k-nearest-neighbour graph. Edges are grouped by source node and
/// ordered by increasing distance within each group.
struct SparseGraph {
  int n = 0;
  std::vector<Point> node_feat;
  std::vector<Edge> edges;
  std::vector<double> edge_feat;
  std::optional<std::vector<std::uint8_t>> labels;

  std::size_t edge_count() const noexcept { return edges.size(); }
};

/// Per-directed-edge probability of belonging to the optimal tour, aligned
/// with the edge order of the graph it was predicted on.
struct Heatmap {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> probs;
};

struct LabeledGraph {
  SparseGraph graph;
  /// Undirected optimal-tour edges with neither direction in the graph.
  std::size_t coverage_deficit = 0;
};

/// n i.i.d. uniform points in [0,1]^2. Throws std::invalid_argument for
/// n < kMinCities.
Instance generate_instance(int n, std::uint64_t seed);

/// Throws std::invalid_argument when an Instance invariant is violated.
void validate(const Instance& instance);

bool is_permutation(std::span<const int> order, int n);

/// Closed-cycle Euclidean length. Throws std::invalid_argument if `order` is
/// not a permutation of 0..n-1.
double tour_length(const Instance& instance, std::span<const int> order);
double tour_length(std::span<const Point> coords, std::span<const int> order);

Tour make_tour(const Instance& instance, Order order);

/// Rotates to start at node 0 and orients so that order[1] < order[n-1].
Order canonical_order(Order order);

/// Out-edges from every node to its min(k, n-1) nearest neighbours.
/// Distance ties go to the smaller node index.
SparseGraph knn_sparsify(const Instance& instance, int k);

/// label(u->v) = 1 iff u and v are adjacent in `optimal`. Throws
/// std::invalid_argument on node-count mismatch or an invalid tour.
LabeledGraph label_edges(SparseGraph graph, const Tour& optimal);

}  // namespace edgegae

#endif  // EDGEGAE_TSP_HPP_
