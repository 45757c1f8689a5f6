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

#include "edgegae/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace edgegae {

Tensor::Tensor(std::vector<std::size_t> dims, double fill)
    : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > 2) {
    throw std::invalid_argument("tensor rank must be 1 or 2");
  }
  const std::size_t count = std::accumulate(
      dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  data_.assign(count, fill);
}

MatrixMap Tensor::matrix() noexcept {
  return {data_.data(), static_cast<Eigen::Index>(rows()),
          static_cast<Eigen::Index>(cols())};
}

ConstMatrixMap Tensor::matrix() const noexcept {
  return {data_.data(), static_cast<Eigen::Index>(rows()),
          static_cast<Eigen::Index>(cols())};
}

VectorMap Tensor::vector() noexcept {
  return {data_.data(), static_cast<Eigen::Index>(data_.size())};
}

ConstVectorMap Tensor::vector() const noexcept {
  return {data_.data(), static_cast<Eigen::Index>(data_.size())};
}

void Tensor::fill(double value) noexcept {
  std::fill(data_.begin(), data_.end(), value);
}

bool Tensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string shape_string(const std::vector<std::size_t>& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out += "x";
    out += std::to_string(dims[i]);
  }
  return out + "]";
}

std::size_t ParamStore::add(std::string name, std::vector<std::size_t> dims) {
  if (index_.contains(name)) {
    throw std::invalid_argument("duplicate parameter '" + name + "'");
  }
  Parameter p;
  p.name = name;
  p.value = Tensor(dims);
  p.grad = Tensor(dims);
  p.adam_m = Tensor(dims);
  p.adam_v = Tensor(std::move(dims));
  index_.emplace(std::move(name), entries_.size());
  entries_.push_back(std::move(p));
  return entries_.size() - 1;
}

Parameter& ParamStore::at(std::string_view name) {
  return entries_[index_of(name)];
}

const Parameter& ParamStore::at(std::string_view name) const {
  return entries_[index_of(name)];
}

const Parameter* ParamStore::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::size_t ParamStore::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
  }
  return it->second;
}

void ParamStore::zero_grad() noexcept {
  for (auto& p : entries_) p.grad.fill(0.0);
}

std::size_t ParamStore::parameter_count() const noexcept {
  std::size_t total = 0;
  for (const auto& p : entries_) total += p.value.size();
  return total;
}

}  // namespace edgegae
