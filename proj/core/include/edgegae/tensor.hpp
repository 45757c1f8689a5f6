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

#ifndef EDGEGAE_TENSOR_HPP_
#define EDGEGAE_TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace edgegae {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using VectorMap = Eigen::Map<Eigen::VectorXd>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

/// Dense row-major tensor of rank 1 or 2.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims, double fill = 0.0);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t rows() const noexcept { return dims_.empty() ? 0 : dims_[0]; }
  std::size_t cols() const noexcept {
    return dims_.size() < 2 ? 1 : dims_[1];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  /// rows() x cols() view; a vector appears as a column.
  MatrixMap matrix() noexcept;
  ConstMatrixMap matrix() const noexcept;
  VectorMap vector() noexcept;
  ConstVectorMap vector() const noexcept;

  void fill(double value) noexcept;
  bool same_shape(const Tensor& other) const noexcept {
    return dims_ == other.dims_;
  }
  bool all_finite() const noexcept;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t>& dims);

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor adam_m;
  Tensor adam_v;
};

/// Named trainable tensors with gradient and Adam slots, in insertion order.
class ParamStore {
 public:
  /// Adds a zero-initialised parameter and returns its index. Throws
  /// std::invalid_argument on a duplicate name.
  std::size_t add(std::string name, std::vector<std::size_t> dims);

  std::size_t size() const noexcept { return entries_.size(); }
  Parameter& operator[](std::size_t i) noexcept { return entries_[i]; }
  const Parameter& operator[](std::size_t i) const noexcept {
    return entries_[i];
  }

  /// Throws std::out_of_range for an unknown name.
  Parameter& at(std::string_view name);
  const Parameter& at(std::string_view name) const;
  const Parameter* find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  std::vector<Parameter>& entries() noexcept { return entries_; }
  const std::vector<Parameter>& entries() const noexcept { return entries_; }

  void zero_grad() noexcept;
  std::size_t parameter_count() const noexcept;

  std::uint64_t step_count = 0;

 private:
  std::vector<Parameter> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace edgegae

#endif  // EDGEGAE_TENSOR_HPP_
