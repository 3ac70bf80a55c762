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

#include "qnlp/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "qnlp/errors.hpp"

namespace qnlp {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * shape[k];
  }
  return strides;
}

/// Odometer over a multi-index with the given extents.
bool next_index(std::vector<std::size_t>& index,
             std::span<const std::size_t> extents) {
  for (std::size_t k = index.size(); k-- > 0;) {
    if (++index[k] < extents[k]) return true;
    index[k] = 0;
  }
  return false;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(product(shape_), cplx{0.0}) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != product(shape_)) {
    throw DimensionMismatch("tensor data size " + std::to_string(data_.size()) +
                            " does not match shape volume " +
                            std::to_string(product(shape_)));
  }
}

Tensor Tensor::scalar(cplx value) { return Tensor({}, {value}); }

Tensor Tensor::delta(std::size_t rank, std::size_t dim) {
  Tensor t(std::vector<std::size_t>(rank, dim));
  std::size_t step = 0;
  for (std::size_t k = 0; k < rank; ++k) step = step * dim + 1;
  if (rank == 0) {
    t.data_[0] = 1.0;
    return t;
  }
  for (std::size_t i = 0; i < dim; ++i) t.data_[i * step] = 1.0;
  return t;
}

cplx& Tensor::at(std::span<const std::size_t> index) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    flat = flat * shape_[k] + index[k];
  }
  return data_[flat];
}

cplx Tensor::at(std::span<const std::size_t> index) const {
  return const_cast<Tensor*>(this)->at(index);
}

Tensor Tensor::permuted(std::span<const std::size_t> order) const {
  std::vector<std::size_t> shape(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) shape[k] = shape_[order[k]];
  Tensor out(shape);
  const auto src_strides = strides_of(shape_);
  std::vector<std::size_t> index(order.size(), 0);
  std::size_t flat = 0;
  if (out.data_.empty()) return out;
  do {
    std::size_t src = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      src += index[k] * src_strides[order[k]];
    }
    out.data_[flat++] = data_[src];
  } while (next_index(index, shape));
  return out;
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
  return Tensor(std::move(shape), data_);
}

Tensor& Tensor::operator*=(cplx factor) {
  for (auto& x : data_) x *= factor;
  return *this;
}

double Tensor::norm() const {
  double sum = 0.0;
  for (const auto& x : data_) sum += std::norm(x);
  return std::sqrt(sum);
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

namespace {

/// Sums the diagonal of every label repeated inside one factor.
LabeledTensor trace_repeated(LabeledTensor in) {
  std::map<int, std::vector<std::size_t>> axes_of;
  for (std::size_t k = 0; k < in.labels.size(); ++k) {
    axes_of[in.labels[k]].push_back(k);
  }
  bool repeated = false;
  for (const auto& [label, axes] : axes_of) {
    if (axes.size() > 2) {
      throw InvalidDiagram("label " + std::to_string(label) +
                           " occurs more than twice in one factor");
    }
    if (axes.size() == 2) repeated = true;
  }
  if (!repeated) return in;

  const auto& shape = in.tensor.shape();
  std::vector<int> kept_labels;
  std::vector<std::size_t> kept_axes;
  for (std::size_t k = 0; k < in.labels.size(); ++k) {
    if (axes_of[in.labels[k]].size() == 1) {
      kept_labels.push_back(in.labels[k]);
      kept_axes.push_back(k);
    }
  }
  std::vector<std::size_t> kept_shape;
  for (auto k : kept_axes) kept_shape.push_back(shape[k]);
  Tensor out(kept_shape);
  const auto strides = strides_of(shape);
  std::vector<std::size_t> index(shape.size(), 0);
  do {
    bool diagonal = true;
    for (const auto& [label, axes] : axes_of) {
      if (axes.size() == 2 && index[axes[0]] != index[axes[1]]) {
        diagonal = false;
        break;
      }
    }
    if (!diagonal) continue;
    std::size_t src = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) src += index[k] * strides[k];
    std::size_t dst = 0;
    for (auto k : kept_axes) dst = dst * shape[k] + index[k];
    out[dst] += in.tensor[src];
  } while (next_index(index, shape));
  return {std::move(out), std::move(kept_labels)};
}

LabeledTensor contract_pair(const LabeledTensor& a, const LabeledTensor& b) {
  std::vector<int> out_labels;
  std::vector<std::size_t> out_shape;
  std::vector<int> shared;
  std::vector<std::size_t> shared_dims;
  for (std::size_t k = 0; k < a.labels.size(); ++k) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[k]);
    if (it == b.labels.end()) {
      out_labels.push_back(a.labels[k]);
      out_shape.push_back(a.tensor.shape()[k]);
    } else {
      const std::size_t bk = static_cast<std::size_t>(it - b.labels.begin());
      if (a.tensor.shape()[k] != b.tensor.shape()[bk]) {
        throw DimensionMismatch("label " + std::to_string(a.labels[k]) +
                                " joins dimensions " +
                                std::to_string(a.tensor.shape()[k]) + " and " +
                                std::to_string(b.tensor.shape()[bk]));
      }
      shared.push_back(a.labels[k]);
      shared_dims.push_back(a.tensor.shape()[k]);
    }
  }
  for (std::size_t k = 0; k < b.labels.size(); ++k) {
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[k]) ==
        a.labels.end()) {
      out_labels.push_back(b.labels[k]);
      out_shape.push_back(b.tensor.shape()[k]);
    }
  }

  // Stride of every output/shared label inside a and b.
  const auto a_strides = strides_of(a.tensor.shape());
  const auto b_strides = strides_of(b.tensor.shape());
  auto stride_in = [](const LabeledTensor& t,
                      const std::vector<std::size_t>& strides, int label) {
    for (std::size_t k = 0; k < t.labels.size(); ++k) {
      if (t.labels[k] == label) return strides[k];
    }
    return std::size_t{0};
  };
  std::vector<std::size_t> out_a, out_b, sh_a, sh_b;
  for (int label : out_labels) {
    out_a.push_back(stride_in(a, a_strides, label));
    out_b.push_back(stride_in(b, b_strides, label));
  }
  for (int label : shared) {
    sh_a.push_back(stride_in(a, a_strides, label));
    sh_b.push_back(stride_in(b, b_strides, label));
  }

  Tensor out(out_shape);
  std::vector<std::size_t> oi(out_shape.size(), 0);
  std::size_t flat = 0;
  do {
    std::size_t base_a = 0, base_b = 0;
    for (std::size_t k = 0; k < oi.size(); ++k) {
      base_a += oi[k] * out_a[k];
      base_b += oi[k] * out_b[k];
    }
    cplx sum = 0.0;
    std::vector<std::size_t> si(shared.size(), 0);
    do {
      std::size_t ia = base_a, ib = base_b;
      for (std::size_t k = 0; k < si.size(); ++k) {
        ia += si[k] * sh_a[k];
        ib += si[k] * sh_b[k];
      }
      sum += a.tensor[ia] * b.tensor[ib];
    } while (next_index(si, shared_dims));
    out[flat++] = sum;
  } while (next_index(oi, out_shape));
  return {std::move(out), std::move(out_labels)};
}

}  // namespace

Tensor contract_network(std::vector<LabeledTensor> factors,
                        std::span<const int> output) {
  for (auto& f : factors) {
    if (f.labels.size() != f.tensor.rank()) {
      throw DimensionMismatch("factor has " + std::to_string(f.labels.size()) +
                              " labels for rank " +
                              std::to_string(f.tensor.rank()));
    }
    f = trace_repeated(std::move(f));
  }
  if (factors.empty()) {
    if (!output.empty()) {
      throw InvalidDiagram("output labels requested from an empty network");
    }
    return Tensor::scalar(1.0);
  }

  while (factors.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    bool best_shares = false;
    double best_size = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (std::size_t j = i + 1; j < factors.size(); ++j) {
        double size = 1.0;
        bool shares = false;
        const auto& a = factors[i];
        const auto& b = factors[j];
        for (std::size_t k = 0; k < a.labels.size(); ++k) {
          if (std::find(b.labels.begin(), b.labels.end(), a.labels[k]) ==
              b.labels.end()) {
            size *= static_cast<double>(a.tensor.shape()[k]);
          } else {
            shares = true;
          }
        }
        for (std::size_t k = 0; k < b.labels.size(); ++k) {
          if (std::find(a.labels.begin(), a.labels.end(), b.labels[k]) ==
              a.labels.end()) {
            size *= static_cast<double>(b.tensor.shape()[k]);
          }
        }
        if ((shares && !best_shares) ||
            (shares == best_shares && size < best_size)) {
          best_i = i;
          best_j = j;
          best_shares = shares;
          best_size = size;
        }
      }
    }
    auto merged = contract_pair(factors[best_i], factors[best_j]);
    factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(best_j));
    factors[best_i] = std::move(merged);
  }

  auto& last = factors.front();
  if (last.labels.size() != output.size()) {
    throw InvalidDiagram("network leaves " + std::to_string(last.labels.size()) +
                         " open labels, expected " +
                         std::to_string(output.size()));
  }
  std::vector<std::size_t> order;
  for (int label : output) {
    auto it = std::find(last.labels.begin(), last.labels.end(), label);
    if (it == last.labels.end()) {
      throw InvalidDiagram("output label " + std::to_string(label) +
                           " is not open in the network");
    }
    order.push_back(static_cast<std::size_t>(it - last.labels.begin()));
  }
  return last.tensor.permuted(order);
}

}  // namespace qnlp
