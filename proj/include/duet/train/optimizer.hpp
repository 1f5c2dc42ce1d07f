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

#ifndef DUET_TRAIN_OPTIMIZER_HPP_
#define DUET_TRAIN_OPTIMIZER_HPP_

#include <map>
#include <string>
#include <vector>

#include "duet/nn/tensor.hpp"

namespace duet::train {

struct AdamWConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

struct AdamWState {
  std::map<std::string, std::vector<double>> m;
  std::map<std::string, std::vector<double>> v;
  int64_t t = 0;
};

struct StepResult {
  bool applied = false;
  std::string message;
};

// Decoupled weight decay:
//   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2  (bias corrected)
//   theta <- theta - lr (m_hat / (sqrt(v_hat) + eps) + wd theta)
// A non-finite gradient aborts the whole step, leaving params and state
// untouched; the message names the offending parameter.
StepResult adamw_step(nn::ParamMap& params, AdamWState& state, const AdamWConfig& cfg);

// Scales all gradients so their global L2 norm is at most max_norm.
// Returns the pre-clip norm. max_norm <= 0 disables clipping.
double clip_gradients(nn::ParamMap& params, double max_norm);

}  // namespace duet::train

#endif  // DUET_TRAIN_OPTIMIZER_HPP_
