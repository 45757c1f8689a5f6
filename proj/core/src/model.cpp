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

#include "edgegae/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "edgegae/errors.hpp"

namespace edgegae {
namespace {

RowMatrix relu_mask(const RowMatrix& grad, const RowMatrix& pre) {
  return (pre.array() > 0.0).select(grad, 0.0);
}

// Adds a RowMatrix into a running gradient, allocating it on first use.
void accumulate(RowMatrix& target, const RowMatrix& value) {
  if (target.size() == 0) target = value;
  else target += value;
}

}  // namespace

void validate(const ModelConfig& config) {
  if (config.layers < 1) throw std::invalid_argument("layers must be >= 1");
  if (config.hidden < 1) throw std::invalid_argument("hidden must be >= 1");
  if (config.knn < 1) throw std::invalid_argument("knn must be >= 1");
  if (config.mlp_layers < 1) {
    throw std::invalid_argument("mlp_layers must be >= 1");
  }
  if (!(config.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
}

BatchedGraph make_batch(std::span<const SparseGraph* const> graphs) {
  BatchedGraph batch;
  batch.graph_count = graphs.size();
  batch.node_offsets.assign(1, 0);
  batch.edge_offsets.assign(1, 0);
  std::size_t labelled = 0;
  for (const SparseGraph* g : graphs) {
    batch.node_offsets.push_back(batch.node_offsets.back() +
                                 static_cast<std::size_t>(g->n));
    batch.edge_offsets.push_back(batch.edge_offsets.back() + g->edges.size());
    if (g->labels) ++labelled;
  }
  if (labelled != 0 && labelled != graphs.size()) {
    throw std::invalid_argument("batch mixes labelled and unlabelled graphs");
  }
  const std::size_t nodes = batch.node_offsets.back();
  const std::size_t edges = batch.edge_offsets.back();
  batch.node_feat.resize(static_cast<Eigen::Index>(nodes), 2);
  batch.edge_feat.resize(static_cast<Eigen::Index>(edges), 1);
  batch.edges.reserve(edges);
  if (labelled != 0) batch.labels.reserve(edges);

  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const SparseGraph& graph = *graphs[g];
    const std::size_t node0 = batch.node_offsets[g];
    const std::size_t edge0 = batch.edge_offsets[g];
    for (int v = 0; v < graph.n; ++v) {
      const auto row = static_cast<Eigen::Index>(node0 + static_cast<std::size_t>(v));
      batch.node_feat(row, 0) = graph.node_feat[static_cast<std::size_t>(v)].x;
      batch.node_feat(row, 1) = graph.node_feat[static_cast<std::size_t>(v)].y;
    }
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      batch.edges.push_back({graph.edges[e].src + static_cast<int>(node0),
                             graph.edges[e].dst + static_cast<int>(node0)});
      batch.edge_feat(static_cast<Eigen::Index>(edge0 + e), 0) = graph.edge_feat[e];
      if (labelled != 0) batch.labels.push_back((*graph.labels)[e]);
    }
  }

  batch.in_offsets.assign(nodes + 1, 0);
  for (const auto& e : batch.edges) ++batch.in_offsets[static_cast<std::size_t>(e.dst) + 1];
  std::partial_sum(batch.in_offsets.begin(), batch.in_offsets.end(),
                   batch.in_offsets.begin());
  batch.in_edges.resize(edges);
  std::vector<std::size_t> cursor(batch.in_offsets.begin(),
                                  batch.in_offsets.end() - 1);
  for (std::size_t m = 0; m < edges; ++m) {
    batch.in_edges[cursor[static_cast<std::size_t>(batch.edges[m].dst)]++] = m;
  }
  auto key = [&](std::size_t m) {
    const auto src = static_cast<Eigen::Index>(batch.edges[m].src);
    return std::make_tuple(batch.edge_feat(static_cast<Eigen::Index>(m), 0),
                           batch.node_feat(src, 0), batch.node_feat(src, 1), m);
  };
  for (std::size_t v = 0; v < nodes; ++v) {
    std::sort(batch.in_edges.begin() + static_cast<std::ptrdiff_t>(batch.in_offsets[v]),
              batch.in_edges.begin() + static_cast<std::ptrdiff_t>(batch.in_offsets[v + 1]),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  }
  return batch;
}

BatchedGraph make_batch(const SparseGraph& graph) {
  const SparseGraph* one[] = {&graph};
  return make_batch(std::span<const SparseGraph* const>(one));
}

SparseGraph BatchedGraph::graph(std::size_t g) const {
  SparseGraph out;
  const std::size_t node0 = node_offsets.at(g);
  const std::size_t node1 = node_offsets.at(g + 1);
  out.n = static_cast<int>(node1 - node0);
  for (std::size_t v = node0; v < node1; ++v) {
    const auto row = static_cast<Eigen::Index>(v);
    out.node_feat.push_back({node_feat(row, 0), node_feat(row, 1)});
  }
  const int shift = static_cast<int>(node0);
  if (has_labels()) out.labels.emplace();
  for (std::size_t m = edge_offsets.at(g); m < edge_offsets.at(g + 1); ++m) {
    out.edges.push_back({edges[m].src - shift, edges[m].dst - shift});
    out.edge_feat.push_back(edge_feat(static_cast<Eigen::Index>(m), 0));
    if (has_labels()) {
      out.labels->push_back(static_cast<std::uint8_t>(labels[m]));
    }
  }
  return out;
}

RowMatrix gate_weights(const RowMatrix& edge_embed, const BatchedGraph& batch,
                       double delta, RowMatrix* denominators) {
  const RowMatrix sig = sigmoid(edge_embed);
  const auto nodes = static_cast<Eigen::Index>(batch.node_count());
  RowMatrix den(nodes, edge_embed.cols());
  for (Eigen::Index v = 0; v < nodes; ++v) {
    auto acc = den.row(v);
    acc.setZero();
    for (std::size_t k = batch.in_offsets[static_cast<std::size_t>(v)];
         k < batch.in_offsets[static_cast<std::size_t>(v) + 1]; ++k) {
      acc += sig.row(static_cast<Eigen::Index>(batch.in_edges[k]));
    }
    acc.array() += delta;
  }
  RowMatrix gate(edge_embed.rows(), edge_embed.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    gate.row(row) = sig.row(row).cwiseQuotient(den.row(batch.edges[m].dst));
  }
  if (denominators != nullptr) *denominators = std::move(den);
  return gate;
}

EdgeGae::EdgeGae(const ModelConfig& config, std::uint64_t seed)
    : config_(config) {
  validate(config_);
  const auto h = static_cast<std::size_t>(config_.hidden);
  Rng rng(seed);
  auto weight = [&](const std::string& name, std::size_t out, std::size_t in) {
    const std::size_t i = params_.add(name, {out, in});
    xavier_uniform(params_[i].value, in, out, rng);
    return i;
  };
  auto vec = [&](const std::string& name, std::size_t size, double fill) {
    const std::size_t i = params_.add(name, {size});
    params_[i].value.fill(fill);
    return i;
  };

  node_w_ = weight("embed.node.weight", h, 2);
  node_b_ = vec("embed.node.bias", h, 0.0);
  edge_w_ = weight("embed.edge.weight", h, 1);
  edge_b_ = vec("embed.edge.bias", h, 0.0);
  for (int l = 0; l < config_.layers; ++l) {
    const std::string p = "layer." + std::to_string(l) + ".";
    const std::string bn = "bn." + std::to_string(l) + ".";
    LayerParams lp{};
    lp.a = weight(p + "A", h, h);
    lp.b = weight(p + "B", h, h);
    lp.c = weight(p + "C", h, h);
    lp.d = weight(p + "D", h, h);
    lp.e = weight(p + "E", h, h);
    lp.node_gamma = vec(bn + "node.gamma", h, 1.0);
    lp.node_beta = vec(bn + "node.beta", h, 0.0);
    lp.edge_gamma = vec(bn + "edge.gamma", h, 1.0);
    lp.edge_beta = vec(bn + "edge.beta", h, 0.0);
    layer_params_.push_back(lp);
    norms_.emplace_back(config_.hidden);
    norms_.emplace_back(config_.hidden);
  }
  dec_f_ = weight("decoder.F", h, h);
  dec_g_ = weight("decoder.G", h, h);
  dec_j_ = weight("decoder.J", h, h);
  for (int l = 0; l < config_.mlp_layers; ++l) {
    const std::string p = "mlp." + std::to_string(l) + ".";
    const std::size_t out = l + 1 == config_.mlp_layers ? 1 : h;
    mlp_w_.push_back(weight(p + "weight", out, h));
    mlp_b_.push_back(vec(p + "bias", out, 0.0));
  }
}

LatentState EdgeGae::embed_inputs(const BatchedGraph& batch) const {
  return {linear(batch.node_feat, value(node_w_), &value(node_b_)),
          linear(batch.edge_feat, value(edge_w_), &value(edge_b_))};
}

LatentState EdgeGae::layer_forward(const LatentState& state, int layer,
                                   const BatchedGraph& batch, Mode mode,
                                   BatchNormState& node_stats,
                                   BatchNormState& edge_stats,
                                   LayerTape* tape) const {
  if (layer < 0 || layer >= config_.layers) {
    throw std::invalid_argument("layer index " + std::to_string(layer) +
                                " out of range");
  }
  const LayerParams& lp = layer_params_[static_cast<std::size_t>(layer)];
  const auto& h = state.h;
  const auto& e = state.e;

  const RowMatrix ah = linear(h, value(lp.a));
  RowMatrix bh = linear(h, value(lp.b));
  const RowMatrix dh = linear(h, value(lp.d));
  const RowMatrix eh = linear(h, value(lp.e));
  const RowMatrix ce = linear(e, value(lp.c));

  RowMatrix edge_pre(e.rows(), e.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    edge_pre.row(row) =
        ce.row(row) + dh.row(batch.edges[m].dst) + eh.row(batch.edges[m].src);
  }

  RowMatrix den;
  RowMatrix gate = gate_weights(e, batch, config_.delta, &den);

  RowMatrix node_pre(h.rows(), h.cols());
  Eigen::RowVectorXd agg(h.cols());
  for (Eigen::Index v = 0; v < h.rows(); ++v) {
    agg.setZero();
    for (std::size_t k = batch.in_offsets[static_cast<std::size_t>(v)];
         k < batch.in_offsets[static_cast<std::size_t>(v) + 1]; ++k) {
      const std::size_t m = batch.in_edges[k];
      agg += gate.row(static_cast<Eigen::Index>(m))
                 .cwiseProduct(bh.row(batch.edges[m].src));
    }
    node_pre.row(v) = ah.row(v) + agg;
  }

  BatchNormCache node_cache;
  BatchNormCache edge_cache;
  RowMatrix node_bn = batch_norm(node_pre, value(lp.node_gamma),
                                 value(lp.node_beta), node_stats, mode,
                                 tape ? &node_cache : nullptr);
  RowMatrix edge_bn = batch_norm(edge_pre, value(lp.edge_gamma),
                                 value(lp.edge_beta), edge_stats, mode,
                                 tape ? &edge_cache : nullptr);

  LatentState out{relu(node_bn) + h, relu(edge_bn) + e};
  if (tape != nullptr) {
    tape->input = state;
    tape->bh = std::move(bh);
    tape->edge_sig = sigmoid(e);
    tape->gate_den = std::move(den);
    tape->gate = std::move(gate);
    tape->node_bn = std::move(node_bn);
    tape->edge_bn = std::move(edge_bn);
    tape->node_cache = std::move(node_cache);
    tape->edge_cache = std::move(edge_cache);
  }
  return out;
}

LatentState EdgeGae::encoder_layer(const LatentState& state, int layer,
                                   const BatchedGraph& batch, Mode mode,
                                   LayerTape* tape) {
  return layer_forward(state, layer, batch, mode, node_norm(layer),
                       edge_norm(layer), tape);
}

Eigen::VectorXd EdgeGae::decode(const LatentState& state,
                                const BatchedGraph& batch,
                                DecoderTape* tape) const {
  const RowMatrix fh = linear(state.h, value(dec_f_));
  const RowMatrix gh = linear(state.h, value(dec_g_));
  RowMatrix je = linear(state.e, value(dec_j_));

  RowMatrix node_gate(state.e.rows(), state.e.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    node_gate.row(static_cast<Eigen::Index>(m)) =
        fh.row(batch.edges[m].src) + gh.row(batch.edges[m].dst);
  }
  node_gate = sigmoid(node_gate);

  RowMatrix x = node_gate.cwiseProduct(je);
  std::vector<RowMatrix> inputs;
  std::vector<RowMatrix> pre;
  const auto hidden_layers = static_cast<std::size_t>(config_.mlp_layers - 1);
  for (std::size_t l = 0; l < hidden_layers; ++l) {
    RowMatrix z = linear(x, value(mlp_w_[l]), &value(mlp_b_[l]));
    if (tape != nullptr) {
      inputs.push_back(std::move(x));
      pre.push_back(z);
    }
    x = relu(z);
  }
  const RowMatrix logits =
      linear(x, value(mlp_w_.back()), &value(mlp_b_.back()));
  Eigen::VectorXd probs(logits.rows());
  for (Eigen::Index m = 0; m < logits.rows(); ++m) {
    probs[m] = sigmoid(logits(m, 0));
  }
  if (tape != nullptr) {
    inputs.push_back(std::move(x));
    tape->input = state;
    tape->node_gate = std::move(node_gate);
    tape->edge_proj = std::move(je);
    tape->mlp_inputs = std::move(inputs);
    tape->mlp_pre = std::move(pre);
    tape->probs = probs;
  }
  return probs;
}

ForwardResult EdgeGae::forward(const BatchedGraph& batch, Mode mode,
                               bool compute_loss, double pos_weight) {
  if (compute_loss && !batch.has_labels()) {
    throw std::invalid_argument("forward: loss requested on unlabelled batch");
  }
  tape_.reset();
  std::optional<Tape> tape;
  if (compute_loss) {
    tape.emplace();
    tape->batch = batch;
    tape->pos_weight = pos_weight;
    tape->layers.resize(static_cast<std::size_t>(config_.layers));
  }
  LatentState state = embed_inputs(batch);
  for (int l = 0; l < config_.layers; ++l) {
    state = encoder_layer(state, l, batch, mode,
                          tape ? &tape->layers[static_cast<std::size_t>(l)]
                               : nullptr);
  }
  ForwardResult result;
  result.probs = decode(state, batch, tape ? &tape->decoder : nullptr);
  if (compute_loss) {
    result.loss = bce_loss(
        std::span<const double>(result.probs.data(),
                                static_cast<std::size_t>(result.probs.size())),
        batch.labels, pos_weight);
    tape_ = std::move(tape);
  }
  return result;
}

Eigen::VectorXd EdgeGae::infer(const BatchedGraph& batch) const {
  LatentState state = embed_inputs(batch);
  for (int l = 0; l < config_.layers; ++l) {
    BatchNormState node_stats = node_norm(l);
    BatchNormState edge_stats = edge_norm(l);
    state = layer_forward(state, l, batch, Mode::kEval, node_stats, edge_stats,
                          nullptr);
  }
  return decode(state, batch);
}

LatentState EdgeGae::layer_backward(const LayerTape& tape, int layer,
                                    const BatchedGraph& batch,
                                    const LatentState& grad_out) {
  const LayerParams& lp = layer_params_[static_cast<std::size_t>(layer)];
  const RowMatrix& h = tape.input.h;
  const RowMatrix& e = tape.input.e;
  LatentState grad_in = grad_out;  // residual paths
  RowMatrix gx;

  const RowMatrix g_node_pre = batch_norm_backward(
      relu_mask(grad_out.h, tape.node_bn), value(lp.node_gamma),
      tape.node_cache, grad(lp.node_gamma), grad(lp.node_beta));
  const RowMatrix g_edge_pre = batch_norm_backward(
      relu_mask(grad_out.e, tape.edge_bn), value(lp.edge_gamma),
      tape.edge_cache, grad(lp.edge_gamma), grad(lp.edge_beta));

  // e_hat = C e + D h[dst] + E h[src]
  linear_backward(e, value(lp.c), g_edge_pre, grad(lp.c), nullptr, &gx);
  grad_in.e += gx;
  RowMatrix g_dh = RowMatrix::Zero(h.rows(), h.cols());
  RowMatrix g_eh = RowMatrix::Zero(h.rows(), h.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    g_dh.row(batch.edges[m].dst) += g_edge_pre.row(row);
    g_eh.row(batch.edges[m].src) += g_edge_pre.row(row);
  }
  linear_backward(h, value(lp.d), g_dh, grad(lp.d), nullptr, &gx);
  grad_in.h += gx;
  linear_backward(h, value(lp.e), g_eh, grad(lp.e), nullptr, &gx);
  grad_in.h += gx;

  // h_hat = A h + sum gate * B h[src]
  linear_backward(h, value(lp.a), g_node_pre, grad(lp.a), nullptr, &gx);
  grad_in.h += gx;
  RowMatrix g_bh = RowMatrix::Zero(h.rows(), h.cols());
  RowMatrix g_gate(e.rows(), e.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    const auto src = batch.edges[m].src;
    const auto dst = batch.edges[m].dst;
    g_bh.row(src) += g_node_pre.row(dst).cwiseProduct(tape.gate.row(row));
    g_gate.row(row) = g_node_pre.row(dst).cwiseProduct(tape.bh.row(src));
  }
  linear_backward(h, value(lp.b), g_bh, grad(lp.b), nullptr, &gx);
  grad_in.h += gx;

  // gate = sig / (sum sig + delta)
  RowMatrix weighted = RowMatrix::Zero(h.rows(), h.cols());
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    weighted.row(batch.edges[m].dst) +=
        g_gate.row(row).cwiseProduct(tape.gate.row(row));
  }
  for (std::size_t m = 0; m < batch.edge_count(); ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    const auto dst = batch.edges[m].dst;
    const auto s = tape.edge_sig.row(row).array();
    grad_in.e.row(row).array() +=
        (g_gate.row(row).array() - weighted.row(dst).array()) /
        tape.gate_den.row(dst).array() * s * (1.0 - s);
  }
  return grad_in;
}

void EdgeGae::backward(double scale) {
  if (!tape_) {
    throw StateError("backward called without a recorded forward pass");
  }
  const Tape& tape = *tape_;
  const BatchedGraph& batch = tape.batch;
  const DecoderTape& dec = tape.decoder;
  const std::size_t edges = batch.edge_count();

  RowMatrix g_logit(static_cast<Eigen::Index>(edges), 1);
  for (std::size_t m = 0; m < edges; ++m) {
    g_logit(static_cast<Eigen::Index>(m), 0) =
        scale * bce_logit_grad(dec.probs[static_cast<Eigen::Index>(m)],
                               batch.labels[m], tape.pos_weight, edges);
  }

  // MLP head.
  RowMatrix gx;
  linear_backward(dec.mlp_inputs.back(), value(mlp_w_.back()), g_logit,
                  grad(mlp_w_.back()), &grad(mlp_b_.back()), &gx);
  for (std::size_t l = dec.mlp_pre.size(); l-- > 0;) {
    const RowMatrix g_pre = relu_mask(gx, dec.mlp_pre[l]);
    linear_backward(dec.mlp_inputs[l], value(mlp_w_[l]), g_pre,
                    grad(mlp_w_[l]), &grad(mlp_b_[l]), &gx);
  }

  // d = sigmoid(F h[src] + G h[dst]) * J e
  const RowMatrix& h = dec.input.h;
  const RowMatrix& e = dec.input.e;
  LatentState g_state;
  const RowMatrix g_je = gx.cwiseProduct(dec.node_gate);
  const RowMatrix g_a = (gx.array() * dec.edge_proj.array() *
                         dec.node_gate.array() * (1.0 - dec.node_gate.array()))
                            .matrix();
  RowMatrix g_fh = RowMatrix::Zero(h.rows(), h.cols());
  RowMatrix g_gh = RowMatrix::Zero(h.rows(), h.cols());
  for (std::size_t m = 0; m < edges; ++m) {
    const auto row = static_cast<Eigen::Index>(m);
    g_fh.row(batch.edges[m].src) += g_a.row(row);
    g_gh.row(batch.edges[m].dst) += g_a.row(row);
  }
  linear_backward(e, value(dec_j_), g_je, grad(dec_j_), nullptr, &gx);
  accumulate(g_state.e, gx);
  linear_backward(h, value(dec_f_), g_fh, grad(dec_f_), nullptr, &gx);
  accumulate(g_state.h, gx);
  linear_backward(h, value(dec_g_), g_gh, grad(dec_g_), nullptr, &gx);
  accumulate(g_state.h, gx);

  for (int l = config_.layers; l-- > 0;) {
    g_state = layer_backward(tape.layers[static_cast<std::size_t>(l)], l,
                             batch, g_state);
  }

  linear_backward(batch.node_feat, value(node_w_), g_state.h, grad(node_w_),
                  &grad(node_b_), nullptr);
  linear_backward(batch.edge_feat, value(edge_w_), g_state.e, grad(edge_w_),
                  &grad(edge_b_), nullptr);
}

std::vector<Heatmap> split_heatmaps(const BatchedGraph& batch,
                                    const Eigen::VectorXd& probs) {
  std::vector<Heatmap> out(batch.graph_count);
  for (std::size_t g = 0; g < batch.graph_count; ++g) {
    Heatmap& hm = out[g];
    const int shift = static_cast<int>(batch.node_offsets[g]);
    hm.n = static_cast<int>(batch.node_offsets[g + 1] - batch.node_offsets[g]);
    for (std::size_t m = batch.edge_offsets[g]; m < batch.edge_offsets[g + 1];
         ++m) {
      hm.edges.push_back({batch.edges[m].src - shift, batch.edges[m].dst - shift});
      hm.probs.push_back(probs[static_cast<Eigen::Index>(m)]);
    }
  }
  return out;
}

Heatmap predict_heatmap(const EdgeGae& model, const SparseGraph& graph) {
  const BatchedGraph batch = make_batch(graph);
  return split_heatmaps(batch, model.infer(batch)).front();
}

}  // namespace edgegae
