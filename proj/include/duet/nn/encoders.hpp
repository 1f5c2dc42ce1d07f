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

#ifndef DUET_NN_ENCODERS_HPP_
#define DUET_NN_ENCODERS_HPP_

#include <string>
#include <vector>

#include "duet/nn/tensor.hpp"
#include "duet/text/tokenizer.hpp"

namespace duet::nn {

// Perceiver-style acoustic encoder: a fixed latent array cross-attends to
// conv+GELU-processed keys/values, so parameters are independent of the
// input length.
struct AudioEncoderConfig {
  int n_mels = 80;
  int n_latents = 16;
  int latent_dim = 64;
  int n_cross_layers = 2;
  int n_self_layers = 2;
  int n_heads = 4;
  int conv_kernel = 3;

  void validate() const;
};

struct TextEncoderConfig {
  int vocab_size = text::Vocabulary::kSize;
  int n_layers = 2;
  int dim = 64;
  int n_heads = 4;
  int max_len = 256;

  void validate() const;
};

struct ModelConfig {
  AudioEncoderConfig audio;
  TextEncoderConfig text;
  int proj_dim = 64;
  double dropout = 0.0;

  void validate() const;
};

// Dropout plumbing for forward passes; inference uses the defaults.
struct ForwardCtx {
  bool training = false;
  double dropout = 0.0;
  RandomStream* rng = nullptr;
};

// Creates every named parameter. Each tensor is initialized from a stream
// derived from (seed, parameter name), so values do not depend on creation
// order: linear maps are uniform +-1/sqrt(fan_in), the latent array and
// token embedding are normal with scale 0.02.
void init_model_params(const ModelConfig& cfg, ParamMap& params, uint64_t seed);

// mel [B, T, n_mels] -> [B, latent_dim]
TensorPtr audio_encoder_forward(const TensorPtr& mel, const AudioEncoderConfig& cfg,
                                ParamMap& params, const ForwardCtx& ctx = {});

// Pads the batch internally; sequences must fit max_len. -> [B, dim]
TensorPtr text_encoder_forward(const std::vector<text::TokenSequence>& tokens,
                               const TextEncoderConfig& cfg, ParamMap& params,
                               const ForwardCtx& ctx = {});

// Residual projection head: z = normalize(W2 gelu(W1 h + b1) + b2 + (W1 h + b1)),
// unit L2 rows. head_prefix picks "proj.audio" or "proj.text".
TensorPtr project(const TensorPtr& h, const std::string& head_prefix, const ParamMap& params);

class Model {
 public:
  Model(const ModelConfig& cfg, uint64_t init_seed);
  Model(const ModelConfig& cfg, ParamMap params);

  TensorPtr embed_audio(const TensorPtr& mel, const ForwardCtx& ctx = {});
  TensorPtr embed_text(const std::vector<text::TokenSequence>& tokens,
                       const ForwardCtx& ctx = {});

  ModelConfig config;
  ParamMap params;
};

}  // namespace duet::nn

#endif  // DUET_NN_ENCODERS_HPP_
