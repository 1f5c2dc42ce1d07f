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

#ifndef DUET_NN_ATTENTION_HPP_
#define DUET_NN_ATTENTION_HPP_

#include "duet/nn/tensor.hpp"

namespace duet::nn {

// Scaled dot-product attention over already-projected q/k/v [B, T, D]:
// softmax(QK^T / sqrt(d_head) + mask) V per head, heads concatenated, then
// run through out_proj_w/out_proj_b when given. mask is additive, broadcast
// as [B, 1, 1, Tk].
TensorPtr multi_head_attention(const TensorPtr& q, const TensorPtr& k, const TensorPtr& v,
                               int n_heads, const TensorPtr& mask = nullptr,
                               const TensorPtr& out_proj_w = nullptr,
                               const TensorPtr& out_proj_b = nullptr);

// x @ w + b with b broadcast over leading dims; b may be null.
TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b);

constexpr double kAttentionMaskValue = -1e9;

}  // namespace duet::nn

#endif  // DUET_NN_ATTENTION_HPP_
