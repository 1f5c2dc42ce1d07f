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

#include "duet/nn/attention.hpp"

#include <cmath>

#include "duet/error.hpp"

namespace duet::nn {

TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b) {
  auto y = matmul(x, w);
  if (b) y = add(y, b);
  return y;
}

TensorPtr multi_head_attention(const TensorPtr& q, const TensorPtr& k, const TensorPtr& v,
                               int n_heads, const TensorPtr& mask, const TensorPtr& out_proj_w,
                               const TensorPtr& out_proj_b) {
  if (q->ndim() != 3 || k->ndim() != 3 || v->ndim() != 3) {
    throw ArgumentError("attention expects q/k/v of shape [B, T, D]");
  }
  const int b = q->shape[0];
  const int tq = q->shape[1];
  const int d = q->shape[2];
  const int tk = k->shape[1];
  if (k->shape[0] != b || v->shape[0] != b || k->shape[2] != d || v->shape[2] != d ||
      v->shape[1] != tk) {
    throw ArgumentError("attention q/k/v shapes disagree");
  }
  if (n_heads < 1 || d % n_heads != 0) {
    throw ArgumentError("model dim must be divisible by head count");
  }
  const int dh = d / n_heads;

  // [B, T, D] -> [B, H, T, dh]
  auto split = [&](const TensorPtr& x, int t) {
    return transpose(reshape(x, {b, t, n_heads, dh}), {0, 2, 1, 3});
  };
  auto qh = split(q, tq);
  auto kh = split(k, tk);
  auto vh = split(v, tk);

  auto scores = scale(matmul(qh, transpose(kh)), 1.0 / std::sqrt(static_cast<double>(dh)));
  if (mask) scores = add(scores, mask);
  auto attn = softmax(scores);
  auto ctx = matmul(attn, vh);  // [B, H, Tq, dh]
  auto merged = reshape(transpose(ctx, {0, 2, 1, 3}), {b, tq, d});
  if (out_proj_w) merged = linear(merged, out_proj_w, out_proj_b);
  return merged;
}

}  // namespace duet::nn
