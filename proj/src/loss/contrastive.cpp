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

#include "duet/loss/contrastive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "duet/error.hpp"

namespace duet::loss {

using nn::TensorPtr;

TemperaturePair TemperaturePair::fresh() {
  TemperaturePair t;
  t.log_scale_a = nn::Tensor::scalar(std::log(kInitTau), /*requires_grad=*/true);
  t.log_scale_t = nn::Tensor::scalar(std::log(kInitTau), /*requires_grad=*/true);
  return t;
}

TemperaturePair TemperaturePair::from_params(nn::ParamMap& params) {
  TemperaturePair t;
  t.log_scale_a = params.at("temp.log_scale_a");
  t.log_scale_t = params.at("temp.log_scale_t");
  return t;
}

double TemperaturePair::tau_a() const { return std::exp(log_scale_a->value[0]); }
double TemperaturePair::tau_t() const { return std::exp(log_scale_t->value[0]); }

void TemperaturePair::clamp() {
  const double lo = std::log(kTauMin);
  const double hi = std::log(kTauMax);
  log_scale_a->value[0] = std::clamp(log_scale_a->value[0], lo, hi);
  log_scale_t->value[0] = std::clamp(log_scale_t->value[0], lo, hi);
}

namespace {

void validate_pair(const EmbeddingPair& pair) {
  const auto& za = pair.z_a;
  const auto& zt = pair.z_t;
  if (!za || !zt || za->ndim() != 2 || zt->ndim() != 2) {
    throw ArgumentError("embedding pair must hold [N, d] tensors");
  }
  if (za->shape != zt->shape) {
    throw ArgumentError("embedding pair shapes disagree");
  }
  if (za->shape[0] < 1) throw ArgumentError("embedding pair must be nonempty");
  const int n = za->shape[0];
  const int d = za->shape[1];
  for (const auto* z : {&za, &zt}) {
    for (int r = 0; r < n; ++r) {
      double sq = 0.0;
      for (int c = 0; c < d; ++c) {
        const double v = (**z).value[static_cast<size_t>(r) * d + static_cast<size_t>(c)];
        sq += v * v;
      }
      if (std::abs(std::sqrt(sq) - 1.0) > 1e-6) {
        throw ArgumentError("embedding rows must be unit norm (row " + std::to_string(r) + ")");
      }
    }
  }
}

}  // namespace

TensorPtr similarity_matrix(const EmbeddingPair& pair) {
  validate_pair(pair);
  return nn::matmul(pair.z_a, nn::transpose(pair.z_t));
}

TensorPtr contrastive_loss(const EmbeddingPair& pair, const TemperaturePair& temps) {
  auto sim = similarity_matrix(pair);
  const int n = sim->shape[0];
  std::vector<int> diag(static_cast<size_t>(n));
  std::iota(diag.begin(), diag.end(), 0);

  auto tau_a = nn::exp_op(temps.log_scale_a);
  auto tau_t = nn::exp_op(temps.log_scale_t);
  auto audio_term = nn::pick_columns(nn::log_softmax(nn::mul(sim, tau_a)), diag);
  auto text_term = nn::pick_columns(nn::log_softmax(nn::mul(nn::transpose(sim), tau_t)), diag);
  auto total = nn::add(nn::mean_all(audio_term), nn::mean_all(text_term));
  return nn::scale(total, -1.0);
}

}  // namespace duet::loss
