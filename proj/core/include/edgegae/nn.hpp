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

#ifndef EDGEGAE_NN_HPP_
#define EDGEGAE_NN_HPP_

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "edgegae/rng.hpp"
#include "edgegae/tensor.hpp"

namespace edgegae {

enum class Mode { kTrain, kEval };

// Row convention: every matrix holds one sample per row, so a linear layer
// with weight W (out x in) maps a row x to W x + b, i.e. Y = X W^T + b.

/// Y = X W^T + b, one row at a time with a fixed accumulation order, so the
/// result for a row never depends on the other rows. `bias` may be null.
/// Throws std::invalid_argument on shape mismatch.
RowMatrix linear(const RowMatrix& x, const Tensor& weight,
                 const Tensor* bias = nullptr);

/// Accumulates gradients of Y = X W^T + b. `grad_bias` and `grad_x` may be
/// null; `grad_x` is overwritten, not accumulated.
void linear_backward(const RowMatrix& x, const Tensor& weight,
                     const RowMatrix& grad_y, Tensor& grad_weight,
                     Tensor* grad_bias, RowMatrix* grad_x);

inline double relu(double x) noexcept { return x > 0.0 ? x : 0.0; }

/// Logistic function, evaluated on the branch that cannot overflow.
double sigmoid(double x) noexcept;

RowMatrix relu(const RowMatrix& x);
RowMatrix sigmoid(const RowMatrix& x);

/// Running statistics for one batch-normalised channel group. The affine
/// scale and shift (gamma, beta) are trainable and live in the ParamStore.
struct BatchNormState {
  Eigen::VectorXd running_mean;
  Eigen::VectorXd running_var;
  double momentum = 0.1;
  double epsilon = 1e-5;

  explicit BatchNormState(Eigen::Index channels = 0)
      : running_mean(Eigen::VectorXd::Zero(channels)),
        running_var(Eigen::VectorXd::Ones(channels)) {}
};

struct BatchNormCache {
  Mode mode = Mode::kTrain;
  RowMatrix normalized;
  Eigen::VectorXd inv_std;
};

/// Per-channel normalisation over the rows of `x`. Train mode uses the batch
/// mean and biased variance and updates the running statistics; eval mode
/// uses the running statistics only and leaves `state` untouched.
RowMatrix batch_norm(const RowMatrix& x, const Tensor& gamma,
                     const Tensor& beta, BatchNormState& state, Mode mode,
                     BatchNormCache* cache = nullptr);

/// Returns dL/dx and accumulates dL/dgamma, dL/dbeta.
RowMatrix batch_norm_backward(const RowMatrix& grad_y, const Tensor& gamma,
                              const BatchNormCache& cache, Tensor& grad_gamma,
                              Tensor& grad_beta);

inline constexpr double kProbClamp = 1e-12;

/// Mean over edges of -[w y ln p + (1 - y) ln(1 - p)], p clamped to
/// [kProbClamp, 1 - kProbClamp]. Throws std::invalid_argument on length
/// mismatch.
double bce_loss(std::span<const double> probs, std::span<const double> labels,
                double pos_weight = 1.0);

/// d bce_loss / d logit for p = sigmoid(logit). Zero where p is clamped.
double bce_logit_grad(double prob, double label, double pos_weight,
                      std::size_t count) noexcept;

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update of every parameter, then zeroes gradients.
void adam_step(ParamStore& store, const AdamConfig& config);

/// Uniform in +-sqrt(6 / (fan_in + fan_out)).
void xavier_uniform(Tensor& weight, std::size_t fan_in, std::size_t fan_out,
                    Rng& rng);

}  // namespace edgegae

#endif  // EDGEGAE_NN_HPP_
