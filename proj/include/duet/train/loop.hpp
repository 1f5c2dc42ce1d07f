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

#ifndef DUET_TRAIN_LOOP_HPP_
#define DUET_TRAIN_LOOP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "duet/corpus/types.hpp"
#include "duet/nn/encoders.hpp"
#include "duet/train/optimizer.hpp"

namespace duet::train {

struct TrainConfig {
  int batch_size = 16;  // >= 2 for contrastive batches
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
  int max_epochs = 50;
  int max_steps = 500;  // 0 disables the cap
  int patience = 5;
  uint64_t seed = 0;
  double grad_clip_norm = 1.0;
  int max_frames = 1024;

  void validate() const;
};

struct StepEntry {
  int64_t step;
  double loss;
};

struct EpochEntry {
  int epoch;
  double val_loss;
  double tau_a;
  double tau_t;
};

struct RunLog {
  std::vector<StepEntry> steps;
  std::vector<EpochEntry> epochs;
  uint64_t seed = 0;
  double wall_clock_seconds = 0.0;
  int64_t aborted_steps = 0;

  void write_jsonl(const std::string& path) const;
};

struct TrainResult {
  RunLog log;
  double best_val_loss = 0.0;
  int best_epoch = 0;
  // Parameters at the best validation epoch.
  nn::ParamMap best_params;
};

// Pretraining over captioned clips: batches pair padded log-mel inputs with
// tokenized captions, steps AdamW on the dual-temperature contrastive loss,
// clamps the temperatures, and early-stops on validation loss.
TrainResult train(nn::Model& model, const std::vector<corpus::CaptionedClip>& train_clips,
                  const std::vector<corpus::CaptionedClip>& val_clips, const TrainConfig& cfg);

// Mean contrastive loss over fixed-order batches, no dropout. rng drives
// batch truncation offsets only.
double evaluate_loss(nn::Model& model, const std::vector<corpus::CaptionedClip>& clips,
                     const TrainConfig& cfg, RandomStream rng);

}  // namespace duet::train

#endif  // DUET_TRAIN_LOOP_HPP_
