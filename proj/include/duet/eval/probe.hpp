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

#ifndef DUET_EVAL_PROBE_HPP_
#define DUET_EVAL_PROBE_HPP_

#include <map>

#include "duet/eval/metrics.hpp"

namespace duet::eval {

// Linear-probe head over frozen features: three fully connected layers with
// ReLU and dropout, trained with AdamW at lr 1e-4 for at most 20 epochs with
// early stopping on validation loss.
struct ProbeConfig {
  int hidden1 = 256;
  int hidden2 = 128;
  double dropout = 0.2;
  double lr = 1e-4;
  int max_epochs = 20;
  int patience = 3;
  int batch_size = 8;
  uint64_t seed = 0;
};

struct ProbeResult {
  double top1 = 0.0;
  std::map<int, double> recall_at;  // over class posteriors, k -> R@k
  double best_val_loss = 0.0;
  int epochs_run = 0;
};

// Trains on (train_x, train_y), early-stops on the val split, reports top-1
// accuracy and R@1/R@3 on the test split. Throws ConfigError when a split
// has fewer than two classes.
ProbeResult linear_probe(const Mat& train_x, const std::vector<int>& train_y, const Mat& val_x,
                         const std::vector<int>& val_y, const Mat& test_x,
                         const std::vector<int>& test_y, int n_classes, const ProbeConfig& cfg);

}  // namespace duet::eval

#endif  // DUET_EVAL_PROBE_HPP_
