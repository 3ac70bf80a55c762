// Copyright 2026 The qnlpc Authors
//
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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qnlp {

using cplx = std::complex<double>;

/// Dense row-major complex tensor. A rank-0 tensor holds one scalar.
class Tensor {
 public:
  Tensor() : data_(1, cplx{0.0}) {}
  explicit Tensor(std::vector<std::size_t> shape);
  Tensor(std::vector<std::size_t> shape, std::vector<cplx> data);

  static Tensor scalar(cplx value);
  /// Generalized Kronecker delta: 1 where all indices agree.
  static Tensor delta(std::size_t rank, std::size_t dim);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  cplx& at(std::span<const std::size_t> index);
  cplx at(std::span<const std::size_t> index) const;
  cplx& operator[](std::size_t flat) { return data_[flat]; }
  cplx operator[](std::size_t flat) const { return data_[flat]; }

  /// New tensor whose axis k is axis order[k] of this one.
  Tensor permuted(std::span<const std::size_t> order) const;
  /// Same data, new shape with equal element count.
  Tensor reshaped(std::vector<std::size_t> shape) const;

  Tensor& operator*=(cplx factor);
  double norm() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<cplx> data_;
};

/// Largest elementwise modulus of the difference. Shapes must hold the same
/// number of elements; returns +inf otherwise.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// One factor of a tensor network with an integer label per axis. A label
/// that appears twice inside one factor is traced.
struct LabeledTensor {
  Tensor tensor;
  std::vector<int> labels;
};

/// Contracts a network where every label occurs exactly twice among the
/// factors, or exactly once among the factors when it is an output label.
/// Pairs are merged greedily by smallest intermediate size. The result axes
/// follow `output`.
Tensor contract_network(std::vector<LabeledTensor> factors,
                        std::span<const int> output);

}  // namespace qnlp
