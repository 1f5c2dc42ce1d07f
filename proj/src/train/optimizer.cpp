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

#include "duet/train/optimizer.hpp"

#include <cmath>

#include "duet/error.hpp"

namespace duet::train {

StepResult adamw_step(nn::ParamMap& params, AdamWState& state, const AdamWConfig& cfg) {
  // lr == 0 is allowed: it freezes parameters while keeping the loop's
  // bookkeeping (early stopping, logging) intact.
  if (cfg.lr < 0.0) throw ArgumentError("learning rate must be nonnegative");

  for (const auto& [name, p] : params) {
    if (p->grad.size() != p->value.size()) {
      return {false, "missing gradient for " + name + "; run backward() first"};
    }
    for (double g : p->grad) {
      if (!std::isfinite(g)) {
        return {false, "non-finite gradient in " + name + "; step aborted"};
      }
    }
  }

  state.t += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (auto& [name, p] : params) {
    auto& m = state.m[name];
    auto& v = state.v[name];
    if (m.size() != p->value.size()) m.assign(p->value.size(), 0.0);
    if (v.size() != p->value.size()) v.assign(p->value.size(), 0.0);
    for (size_t i = 0; i < p->value.size(); ++i) {
      const double g = p->grad[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p->value[i] -= cfg.lr * (m_hat / (std::sqrt(v_hat) + cfg.eps) +
                               cfg.weight_decay * p->value[i]);
    }
  }
  return {true, ""};
}

double clip_gradients(nn::ParamMap& params, double max_norm) {
  double sq = 0.0;
  for (const auto& [name, p] : params) {
    for (double g : p->grad) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& [name, p] : params) {
      for (double& g : p->grad) g *= scale;
    }
  }
  return norm;
}

}  // namespace duet::train
