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

#include "duet/train/loop.hpp"

#include <chrono>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "duet/dsp/mel.hpp"
#include "duet/error.hpp"
#include "duet/loss/contrastive.hpp"

namespace duet::train {

namespace {

struct PreparedClip {
  dsp::MelSpectrogram spec;
  text::TokenSequence tokens;
};

std::vector<PreparedClip> prepare(const std::vector<corpus::CaptionedClip>& clips) {
  std::vector<PreparedClip> out;
  out.reserve(clips.size());
  for (const auto& clip : clips) {
    PreparedClip p;
    p.spec = dsp::log_mel(clip.audio);
    p.tokens = text::encode(corpus::training_caption(clip.meta));
    out.push_back(std::move(p));
  }
  return out;
}

// Builds the (mel, tokens) pair for one batch of prepared clips.
struct Batch {
  nn::TensorPtr mel;
  std::vector<text::TokenSequence> tokens;
};

Batch assemble(const std::vector<PreparedClip>& data, const std::vector<size_t>& indices,
               int max_frames, RandomStream& rng) {
  std::vector<dsp::MelSpectrogram> specs;
  specs.reserve(indices.size());
  Batch batch;
  for (size_t idx : indices) {
    specs.push_back(data[idx].spec);
    batch.tokens.push_back(data[idx].tokens);
  }
  auto padded = dsp::batch_pad_or_truncate(specs, rng, max_frames);
  batch.mel = nn::Tensor::from_values({padded.batch, padded.n_frames, dsp::kNumMels},
                                      std::move(padded.mels));
  return batch;
}

double batch_loss(nn::Model& model, const Batch& batch, const nn::ForwardCtx& ctx,
                  nn::TensorPtr* loss_out) {
  loss::EmbeddingPair pair;
  pair.z_a = model.embed_audio(batch.mel, ctx);
  pair.z_t = model.embed_text(batch.tokens, ctx);
  auto temps = loss::TemperaturePair::from_params(model.params);
  auto loss_t = loss::contrastive_loss(pair, temps);
  if (loss_out) *loss_out = loss_t;
  return loss_t->item();
}

nn::ParamMap snapshot(const nn::ParamMap& params) {
  nn::ParamMap copy;
  for (const auto& [name, t] : params) {
    copy.insert(name, nn::Tensor::from_values(t->shape, t->value, /*requires_grad=*/true));
  }
  return copy;
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 2) throw ConfigError("batch_size must be >= 2 for contrastive batches");
  if (lr < 0.0) throw ConfigError("lr must be >= 0");
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (max_frames < 1) throw ConfigError("max_frames must be >= 1");
}

void RunLog::write_jsonl(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open run log: " + path);
  nlohmann::json header;
  header["seed"] = seed;
  header["wall_clock_seconds"] = wall_clock_seconds;
  header["aborted_steps"] = aborted_steps;
  out << header.dump() << "\n";
  for (const auto& s : steps) {
    nlohmann::json j;
    j["step"] = s.step;
    j["loss"] = s.loss;
    out << j.dump() << "\n";
  }
  for (const auto& e : epochs) {
    nlohmann::json j;
    j["epoch"] = e.epoch;
    j["val_loss"] = e.val_loss;
    j["tau_a"] = e.tau_a;
    j["tau_t"] = e.tau_t;
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("run log write failed: " + path);
}

double evaluate_loss(nn::Model& model, const std::vector<corpus::CaptionedClip>& clips,
                     const TrainConfig& cfg, RandomStream rng) {
  if (clips.empty()) throw ConfigError("evaluation split is empty");
  const auto data = prepare(clips);
  double total = 0.0;
  int64_t counted = 0;
  for (size_t start = 0; start < data.size(); start += static_cast<size_t>(cfg.batch_size)) {
    const size_t end = std::min(data.size(), start + static_cast<size_t>(cfg.batch_size));
    if (end - start < 2) break;  // a singleton has no negatives
    std::vector<size_t> indices(end - start);
    std::iota(indices.begin(), indices.end(), start);
    auto batch = assemble(data, indices, cfg.max_frames, rng);
    total += batch_loss(model, batch, {}, nullptr) * static_cast<double>(end - start);
    counted += static_cast<int64_t>(end - start);
  }
  if (counted == 0) throw ConfigError("evaluation split smaller than two clips");
  return total / static_cast<double>(counted);
}

TrainResult train(nn::Model& model, const std::vector<corpus::CaptionedClip>& train_clips,
                  const std::vector<corpus::CaptionedClip>& val_clips, const TrainConfig& cfg) {
  cfg.validate();
  if (train_clips.size() < 2) throw ConfigError("train split needs at least one batch");
  if (val_clips.size() < 2) throw ConfigError("val split needs at least one batch");

  const auto t0 = std::chrono::steady_clock::now();
  const auto data = prepare(train_clips);

  RandomStream root(cfg.seed);
  AdamWConfig opt_cfg{cfg.lr, cfg.beta1, cfg.beta2, cfg.eps, cfg.weight_decay};
  AdamWState opt_state;
  auto temps = loss::TemperaturePair::from_params(model.params);

  TrainResult result;
  result.log.seed = cfg.seed;
  double best_val = 0.0;
  bool has_best = false;
  int bad_epochs = 0;
  int64_t step = 0;
  bool out_of_steps = false;

  for (int epoch = 0; epoch < cfg.max_epochs && !out_of_steps; ++epoch) {
    RandomStream shuffle_rng = root.derive(0x5u).derive(static_cast<uint64_t>(epoch));
    RandomStream batch_rng = root.derive(0x6u).derive(static_cast<uint64_t>(epoch));
    RandomStream dropout_rng = root.derive(0x7u).derive(static_cast<uint64_t>(epoch));
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0u);
    shuffle_rng.shuffle(order);

    for (size_t start = 0; start + 1 < order.size();
         start += static_cast<size_t>(cfg.batch_size)) {
      if (cfg.max_steps > 0 && step >= cfg.max_steps) {
        out_of_steps = true;
        break;
      }
      const size_t end = std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      if (end - start < 2) break;
      std::vector<size_t> indices(order.begin() + static_cast<ptrdiff_t>(start),
                                  order.begin() + static_cast<ptrdiff_t>(end));
      auto batch = assemble(data, indices, cfg.max_frames, batch_rng);

      nn::ForwardCtx ctx;
      ctx.training = true;
      ctx.dropout = model.config.dropout;
      ctx.rng = &dropout_rng;
      nn::TensorPtr loss_t;
      const double loss_value = batch_loss(model, batch, ctx, &loss_t);
      nn::backward(loss_t);
      clip_gradients(model.params, cfg.grad_clip_norm);
      const auto step_result = adamw_step(model.params, opt_state, opt_cfg);
      if (!step_result.applied) {
        result.log.aborted_steps += 1;
      } else {
        temps.clamp();
      }
      ++step;
      result.log.steps.push_back({step, loss_value});
    }

    const double val_loss =
        evaluate_loss(model, val_clips, cfg, root.derive(0x8u).derive(static_cast<uint64_t>(epoch)));
    result.log.epochs.push_back({epoch, val_loss, temps.tau_a(), temps.tau_t()});

    if (!has_best || val_loss < best_val) {
      best_val = val_loss;
      has_best = true;
      bad_epochs = 0;
      result.best_epoch = epoch;
      result.best_params = snapshot(model.params);
    } else {
      ++bad_epochs;
      if (bad_epochs >= cfg.patience) break;
    }
  }

  result.best_val_loss = best_val;
  result.log.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace duet::train
