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

#ifndef DUET_LOSS_CONTRASTIVE_HPP_
#define DUET_LOSS_CONTRASTIVE_HPP_

#include "duet/nn/tensor.hpp"

namespace duet::loss {

// Per-modality learnable logit scales tau = exp(log_scale), clamped to
// [1, 100] after each optimizer step; init tau = 1/0.07.
struct TemperaturePair {
  nn::TensorPtr log_scale_a;
  nn::TensorPtr log_scale_t;

  static constexpr double kTauMin = 1.0;
  static constexpr double kTauMax = 100.0;
  static constexpr double kInitTau = 1.0 / 0.07;

  static TemperaturePair fresh();
  // Views over a model's named parameters.
  static TemperaturePair from_params(nn::ParamMap& params);

  double tau_a() const;
  double tau_t() const;

  // Clamps the log scales so tau stays inside [kTauMin, kTauMax].
  void clamp();
};

// Matched unit-norm embedding rows: Z_a[k] pairs with Z_t[k].
struct EmbeddingPair {
  nn::TensorPtr z_a;  // [N, d]
  nn::TensorPtr z_t;  // [N, d]
};

// S[k][n] = z_a^k . z_t^n. Validates shapes and unit norms (1e-6).
nn::TensorPtr similarity_matrix(const EmbeddingPair& pair);

// Symmetric InfoNCE with a temperature per modality:
//   L = -(1/N) sum_k [ log softmax_row_k(S tau_a)[k]
//                    + log softmax_row_k(S^T tau_t)[k] ]
// Differentiable w.r.t. both embeddings and both log scales; L >= 0.
nn::TensorPtr contrastive_loss(const EmbeddingPair& pair, const TemperaturePair& temps);

}  // namespace duet::loss

#endif  // DUET_LOSS_CONTRASTIVE_HPP_
