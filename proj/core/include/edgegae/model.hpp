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

#ifndef EDGEGAE_MODEL_HPP_
#define EDGEGAE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgegae/nn.hpp"
#include "edgegae/tensor.hpp"
#include "edgegae/tsp.hpp"

namespace edgegae {

struct ModelConfig {
  int layers = 4;
  int hidden = 64;
  int knn = 25;
  int mlp_layers = 3;
  double delta = 1e-20;
};

/// Throws std::invalid_argument when a ModelConfig invariant fails.
void validate(const ModelConfig& config);

/// Several sparse graphs concatenated into one disjoint graph.
struct BatchedGraph {
  std::size_t graph_count = 0;
  /// graph_count + 1 entries each.
  std::vector<std::size_t> node_offsets;
  std::vector<std::size_t> edge_offsets;

  RowMatrix node_feat;  // nodes x 2
  RowMatrix edge_feat;  // edges x 1
  std::vector<Edge> edges;
  std::vector<double> labels;  // empty when unlabelled

  /// In-edges of every node (CSR by destination), each list sorted by
  /// (distance, source x, source y, edge index). Sums over a neighbourhood
  /// follow this order, which does not depend on node numbering.
  std::vector<std::size_t> in_offsets;
  std::vector<std::size_t> in_edges;

  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(node_feat.rows());
  }
  std::size_t edge_count() const noexcept { return edges.size(); }
  bool has_labels() const noexcept { return !labels.empty(); }

  /// Recovers graph g with its local node numbering.
  SparseGraph graph(std::size_t g) const;
};

/// Throws std::invalid_argument if only some graphs carry labels.
BatchedGraph make_batch(std::span<const SparseGraph* const> graphs);
BatchedGraph make_batch(const SparseGraph& graph);

/// Node and edge embeddings between encoder layers.
struct LatentState {
  RowMatrix h;  // nodes x H
  RowMatrix e;  // edges x H
};

/// Everything one encoder layer needs for its backward pass.
struct LayerTape {
  LatentState input;
  RowMatrix bh;         // B h
  RowMatrix edge_sig;   // sigmoid(e)
  RowMatrix gate_den;   // per node: sum of in-edge sigmoids + delta
  RowMatrix gate;       // per edge
  RowMatrix node_bn;    // BN(node pre-activation)
  RowMatrix edge_bn;    // BN(edge pre-activation)
  BatchNormCache node_cache;
  BatchNormCache edge_cache;
};

struct DecoderTape {
  LatentState input;
  RowMatrix node_gate;  // sigmoid(F h_src + G h_dst)
  RowMatrix edge_proj;  // J e
  std::vector<RowMatrix> mlp_inputs;
  std::vector<RowMatrix> mlp_pre;  // hidden pre-activations
  Eigen::VectorXd probs;
};

struct ForwardResult {
  Eigen::VectorXd probs;  // one per batch edge
  std::optional<double> loss;
};

/// Gate weights sigmoid(e_m) / (sum over in-edges of dst(m) + delta).
/// Returns the per-edge gates; `denominators` receives the per-node sums.
RowMatrix gate_weights(const RowMatrix& edge_embed, const BatchedGraph& batch,
                       double delta, RowMatrix* denominators = nullptr);

/// Residual gated graph encoder with an edge-centred decoder.
///
/// Edge m = (src -> dst) belongs to the neighbourhood of dst. Each layer
/// computes
///   e_hat = C e + D h[dst] + E h[src]
///   h_hat = A h + sum over in-edges of gate(e) * B h[src]
///   h <- relu(BN(h_hat)) + h,  e <- relu(BN(e_hat)) + e
/// with gates from the layer's input edge embeddings. The decoder scores
/// edge m by MLP(sigmoid(F h[src] + G h[dst]) * J e).
class EdgeGae {
 public:
  explicit EdgeGae(const ModelConfig& config, std::uint64_t seed = 0);

  const ModelConfig& config() const noexcept { return config_; }
  ParamStore& params() noexcept { return params_; }
  const ParamStore& params() const noexcept { return params_; }

  BatchNormState& node_norm(int layer) { return norms_.at(2 * layer); }
  BatchNormState& edge_norm(int layer) { return norms_.at(2 * layer + 1); }
  const BatchNormState& node_norm(int layer) const {
    return norms_.at(2 * layer);
  }
  const BatchNormState& edge_norm(int layer) const {
    return norms_.at(2 * layer + 1);
  }

  LatentState embed_inputs(const BatchedGraph& batch) const;

  /// Train mode updates the layer's BN running statistics.
  LatentState encoder_layer(const LatentState& state, int layer,
                            const BatchedGraph& batch, Mode mode,
                            LayerTape* tape = nullptr);

  /// Edge probabilities in batch edge order.
  Eigen::VectorXd decode(const LatentState& state, const BatchedGraph& batch,
                         DecoderTape* tape = nullptr) const;

  /// Full pass. With `compute_loss` the batch must be labelled; the pass is
  /// recorded (with its own copy of the batch) so backward() can follow.
  ForwardResult forward(const BatchedGraph& batch, Mode mode,
                        bool compute_loss = false, double pos_weight = 1.0);

  /// Accumulates scale * d(loss)/d(param) into the gradient slots. Throws
  /// StateError unless the last forward pass computed a loss.
  void backward(double scale = 1.0);

  /// Eval-mode probabilities without recording anything. Safe to call
  /// concurrently on a model nobody is training.
  Eigen::VectorXd infer(const BatchedGraph& batch) const;

  /// Drops the recorded pass.
  void clear_tape() noexcept { tape_.reset(); }

 private:
  struct Tape {
    BatchedGraph batch;
    double pos_weight = 1.0;
    std::vector<LayerTape> layers;
    DecoderTape decoder;
  };

  struct LayerParams {
    std::size_t a, b, c, d, e;
    std::size_t node_gamma, node_beta, edge_gamma, edge_beta;
  };

  const Tensor& value(std::size_t i) const { return params_[i].value; }
  Tensor& grad(std::size_t i) { return params_[i].grad; }

  LatentState layer_forward(const LatentState& state, int layer,
                            const BatchedGraph& batch, Mode mode,
                            BatchNormState& node_stats,
                            BatchNormState& edge_stats,
                            LayerTape* tape) const;
  LatentState layer_backward(const LayerTape& tape, int layer,
                             const BatchedGraph& batch,
                             const LatentState& grad_out);

  ModelConfig config_;
  ParamStore params_;
  std::vector<BatchNormState> norms_;  // node, edge per layer

  std::size_t node_w_, node_b_, edge_w_, edge_b_;
  std::vector<LayerParams> layer_params_;
  std::size_t dec_f_, dec_g_, dec_j_;
  std::vector<std::size_t> mlp_w_, mlp_b_;

  std::optional<Tape> tape_;
};

/// Splits batch-ordered probabilities into one Heatmap per graph, using
/// local node numbering.
std::vector<Heatmap> split_heatmaps(const BatchedGraph& batch,
                                    const Eigen::VectorXd& probs);

/// Eval-mode heatmap for a single graph.
Heatmap predict_heatmap(const EdgeGae& model, const SparseGraph& graph);

}  // namespace edgegae

#endif  // EDGEGAE_MODEL_HPP_
