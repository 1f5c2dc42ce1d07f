// Copyright 2026 The Duet Authors
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

#ifndef DUET_NN_TENSOR_HPP_
#define DUET_NN_TENSOR_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "duet/random.hpp"

namespace duet::nn {

class Tensor;
using TensorPtr = std::shared_ptr<Tensor>;

int64_t shape_numel(const std::vector<int>& shape);

// Dense 64-bit tensor with a reverse-mode tape. Ops below record their
// parents and a pull-style backward that accumulates into parent grads.
class Tensor {
 public:
  std::vector<int> shape;
  std::vector<double> value;
  std::vector<double> grad;  // filled by backward(); same size as value
  bool requires_grad = false;

  std::vector<TensorPtr> parents;
  std::function<void(Tensor&)> backward_fn;

  static TensorPtr zeros(std::vector<int> shape, bool requires_grad = false);
  static TensorPtr full(std::vector<int> shape, double v, bool requires_grad = false);
  static TensorPtr from_values(std::vector<int> shape, std::vector<double> v,
                               bool requires_grad = false);
  static TensorPtr scalar(double v, bool requires_grad = false);

  int64_t numel() const { return static_cast<int64_t>(value.size()); }
  int ndim() const { return static_cast<int>(shape.size()); }
  bool tracked() const { return requires_grad || !parents.empty(); }
  double item() const;
};

// Numpy-style broadcast of b onto a and vice versa.
std::vector<int> broadcast_shape(const std::vector<int>& a, const std::vector<int>& b);

TensorPtr add(const TensorPtr& a, const TensorPtr& b);
TensorPtr mul(const TensorPtr& a, const TensorPtr& b);
TensorPtr scale(const TensorPtr& a, double s);

// a [..., M, K] @ b, where b is either [K, N] (shared across leading dims)
// or has identical leading dims [..., K, N].
TensorPtr matmul(const TensorPtr& a, const TensorPtr& b);

// Permutes axes; empty perm swaps the last two.
TensorPtr transpose(const TensorPtr& a, std::vector<int> perm = {});
TensorPtr reshape(const TensorPtr& a, std::vector<int> new_shape);

// Last-axis softmax, max-subtracted.
TensorPtr softmax(const TensorPtr& a);
TensorPtr log_softmax(const TensorPtr& a);

TensorPtr exp_op(const TensorPtr& a);
TensorPtr gelu(const TensorPtr& a);  // tanh approximation
TensorPtr relu(const TensorPtr& a);

// Normalizes the last axis; gain/bias shaped [D].
TensorPtr layer_norm(const TensorPtr& x, const TensorPtr& gain, const TensorPtr& bias,
                     double eps = 1e-5);

// x [B, T, Cin], w [K, Cin, Cout] with odd K, bias [Cout]; stride 1, zero
// padded to the same length.
TensorPtr conv1d(const TensorPtr& x, const TensorPtr& w, const TensorPtr& bias);

TensorPtr sum_axis(const TensorPtr& a, int axis);
TensorPtr mean_axis(const TensorPtr& a, int axis);
TensorPtr mean_all(const TensorPtr& a);  // -> [1]

TensorPtr concat(const std::vector<TensorPtr>& parts, int axis);

// Row gather: out has shape ids_shape + [D] for table [V, D].
TensorPtr embedding(const TensorPtr& table, const std::vector<int>& ids,
                    std::vector<int> ids_shape);

// Unit L2 norm over the last axis (safe at zero input).
TensorPtr l2_normalize(const TensorPtr& a);

// out[i] = a[i, cols[i]] for a [N, C].
TensorPtr pick_columns(const TensorPtr& a, const std::vector<int>& cols);

// Inverted dropout; identity when !training or p == 0.
TensorPtr dropout(const TensorPtr& a, double p, RandomStream& rng, bool training);

// Reverse-mode sweep from a scalar root. Allocates/zeroes grad buffers of
// every node in the reachable graph.
void backward(const TensorPtr& root);

// Named parameter collection; std::map keeps serialization order stable.
class ParamMap {
 public:
  TensorPtr& at(const std::string& name);
  const TensorPtr& at(const std::string& name) const;
  void insert(const std::string& name, TensorPtr t);
  bool contains(const std::string& name) const { return params_.count(name) > 0; }

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }
  size_t size() const { return params_.size(); }

  int64_t total_parameters() const;

 private:
  std::map<std::string, TensorPtr> params_;
};

}  // namespace duet::nn

#endif  // DUET_NN_TENSOR_HPP_
