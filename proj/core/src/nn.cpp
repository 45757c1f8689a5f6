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

#include "edgegae/nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edgegae {

RowMatrix linear(const RowMatrix& x, const Tensor& weight, const Tensor* bias) {
  const auto out = weight.rows();
  const auto in = weight.cols();
  if (weight.rank() != 2 || static_cast<std::size_t>(x.cols()) != in) {
    throw std::invalid_argument("linear: input has " +
                                std::to_string(x.cols()) +
                                " columns, weight is " +
                                shape_string(weight.dims()));
  }
  if (bias != nullptr && bias->size() != out) {
    throw std::invalid_argument("linear: bias is " +
                                shape_string(bias->dims()) + ", expected " +
                                std::to_string(out));
  }
  // W^T, so the inner loop is a contiguous axpy over output channels.
  std::vector<double> wt(in * out);
  const auto w = weight.data();
  for (std::size_t o = 0; o < out; ++o) {
    for (std::size_t c = 0; c < in; ++c) wt[c * out + o] = w[o * in + c];
  }
  RowMatrix y(x.rows(), static_cast<Eigen::Index>(out));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double* yr = y.data() + r * static_cast<Eigen::Index>(out);
    const double* xr = x.data() + r * static_cast<Eigen::Index>(in);
    if (bias != nullptr) {
      std::copy_n(bias->data().data(), out, yr);
    } else {
      std::fill_n(yr, out, 0.0);
    }
    for (std::size_t c = 0; c < in; ++c) {
      const double xv = xr[c];
      const double* wc = wt.data() + c * out;
      for (std::size_t o = 0; o < out; ++o) yr[o] += xv * wc[o];
    }
  }
  return y;
}

void linear_backward(const RowMatrix& x, const Tensor& weight,
                     const RowMatrix& grad_y, Tensor& grad_weight,
                     Tensor* grad_bias, RowMatrix* grad_x) {
  grad_weight.matrix().noalias() += grad_y.transpose() * x;
  if (grad_bias != nullptr) {
    grad_bias->vector() += grad_y.colwise().sum().transpose();
  }
  if (grad_x != nullptr) grad_x->noalias() = grad_y * weight.matrix();
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double z = std::exp(x);
  return z / (1.0 + z);
}

RowMatrix relu(const RowMatrix& x) { return x.cwiseMax(0.0); }

RowMatrix sigmoid(const RowMatrix& x) {
  return x.unaryExpr([](double v) { return sigmoid(v); });
}

RowMatrix batch_norm(const RowMatrix& x, const Tensor& gamma,
                     const Tensor& beta, BatchNormState& state, Mode mode,
                     BatchNormCache* cache) {
  const Eigen::Index rows = x.rows();
  const Eigen::Index channels = x.cols();
  if (static_cast<Eigen::Index>(gamma.size()) != channels ||
      static_cast<Eigen::Index>(beta.size()) != channels ||
      state.running_mean.size() != channels) {
    throw std::invalid_argument("batch_norm: channel count mismatch");
  }
  RowMatrix normalized(rows, channels);
  Eigen::VectorXd inv_std(channels);
  if (mode == Mode::kTrain) {
    if (rows < 1) throw std::invalid_argument("batch_norm: empty batch");
    const Eigen::VectorXd mean = x.colwise().mean().transpose();
    const RowMatrix centered = x.rowwise() - mean.transpose();
    const Eigen::VectorXd var =
        centered.array().square().colwise().mean().transpose();
    inv_std = (var.array() + state.epsilon).rsqrt();
    normalized = centered.array().rowwise() * inv_std.transpose().array();
    state.running_mean =
        (1.0 - state.momentum) * state.running_mean + state.momentum * mean;
    state.running_var =
        (1.0 - state.momentum) * state.running_var + state.momentum * var;
  } else {
    inv_std = (state.running_var.array() + state.epsilon).rsqrt();
    // Elementwise only: each output depends on its own input value.
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < channels; ++c) {
        normalized(r, c) = (x(r, c) - state.running_mean[c]) * inv_std[c];
      }
    }
  }
  RowMatrix y(rows, channels);
  const auto g = gamma.data();
  const auto b = beta.data();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < channels; ++c) {
      y(r, c) = normalized(r, c) * g[static_cast<std::size_t>(c)] +
                b[static_cast<std::size_t>(c)];
    }
  }
  if (cache != nullptr) {
    cache->mode = mode;
    cache->normalized = std::move(normalized);
    cache->inv_std = std::move(inv_std);
  }
  return y;
}

RowMatrix batch_norm_backward(const RowMatrix& grad_y, const Tensor& gamma,
                              const BatchNormCache& cache, Tensor& grad_gamma,
                              Tensor& grad_beta) {
  const auto& xhat = cache.normalized;
  const Eigen::VectorXd sum_g = grad_y.colwise().sum().transpose();
  const Eigen::VectorXd sum_gx =
      (grad_y.array() * xhat.array()).colwise().sum().transpose();
  grad_gamma.vector() += sum_gx;
  grad_beta.vector() += sum_g;

  const Eigen::ArrayXd scale = gamma.vector().array() * cache.inv_std.array();
  if (cache.mode == Mode::kEval) {
    return grad_y.array().rowwise() * scale.transpose();
  }
  const double m = static_cast<double>(grad_y.rows());
  RowMatrix grad_x = grad_y;
  grad_x.rowwise() -= (sum_g / m).transpose();
  grad_x.array() -= xhat.array().rowwise() * (sum_gx / m).transpose().array();
  grad_x.array().rowwise() *= scale.transpose();
  return grad_x;
}

double bce_loss(std::span<const double> probs, std::span<const double> labels,
                double pos_weight) {
  if (probs.size() != labels.size()) {
    throw std::invalid_argument("bce_loss: " + std::to_string(probs.size()) +
                                " predictions vs " +
                                std::to_string(labels.size()) + " labels");
  }
  if (probs.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs[i], kProbClamp, 1.0 - kProbClamp);
    const double y = labels[i];
    total -= pos_weight * y * std::log(p) + (1.0 - y) * std::log1p(-p);
  }
  return total / static_cast<double>(probs.size());
}

double bce_logit_grad(double prob, double label, double pos_weight,
                      std::size_t count) noexcept {
  if (prob < kProbClamp || prob > 1.0 - kProbClamp) return 0.0;
  return (-pos_weight * label * (1.0 - prob) + (1.0 - label) * prob) /
         static_cast<double>(count);
}

void adam_step(ParamStore& store, const AdamConfig& config) {
  ++store.step_count;
  const double t = static_cast<double>(store.step_count);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (auto& p : store.entries()) {
    auto value = p.value.data();
    auto grad = p.grad.data();
    auto m = p.adam_m.data();
    auto v = p.adam_v.data();
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g;
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      value[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
      grad[i] = 0.0;
    }
  }
}

void xavier_uniform(Tensor& weight, std::size_t fan_in, std::size_t fan_out,
                    Rng& rng) {
  const double bound =
      std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& w : weight.data()) w = (2.0 * rng.uniform() - 1.0) * bound;
}

}  // namespace edgegae
