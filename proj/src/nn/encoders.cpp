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

#include "duet/nn/encoders.hpp"

#include <cmath>

#include "duet/error.hpp"
#include "duet/nn/attention.hpp"
#include "duet/text/positional.hpp"

namespace duet::nn {

namespace {

constexpr int kFfnMult = 4;
constexpr double kEmbedInitScale = 0.02;
constexpr double kInitLogTau = 2.6592600369327783;  // ln(1/0.07)

uint64_t name_hash(const std::string& name) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

enum class Init { kZero, kOne, kUniformFanIn, kNormal02, kLogTau };

void add_param(ParamMap& params, uint64_t seed, const std::string& name, std::vector<int> shape,
               Init init, int fan_in = 0) {
  auto t = Tensor::zeros(std::move(shape), /*requires_grad=*/true);
  RandomStream rng = RandomStream(seed).derive(name_hash(name));
  switch (init) {
    case Init::kZero:
      break;
    case Init::kOne:
      std::fill(t->value.begin(), t->value.end(), 1.0);
      break;
    case Init::kUniformFanIn: {
      const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (auto& v : t->value) v = rng.uniform(-bound, bound);
      break;
    }
    case Init::kNormal02:
      for (auto& v : t->value) v = rng.normal(0.0, kEmbedInitScale);
      break;
    case Init::kLogTau:
      std::fill(t->value.begin(), t->value.end(), kInitLogTau);
      break;
  }
  params.insert(name, std::move(t));
}

void add_layer_norm(ParamMap& params, uint64_t seed, const std::string& prefix, int dim) {
  add_param(params, seed, prefix + ".g", {dim}, Init::kOne);
  add_param(params, seed, prefix + ".b", {dim}, Init::kZero);
}

void add_linear(ParamMap& params, uint64_t seed, const std::string& prefix, int in_dim,
                int out_dim) {
  add_param(params, seed, prefix + ".w", {in_dim, out_dim}, Init::kUniformFanIn, in_dim);
  add_param(params, seed, prefix + ".b", {out_dim}, Init::kZero);
}

// One pre-norm transformer block; cross blocks get a second LN for the
// key/value stream.
void add_block(ParamMap& params, uint64_t seed, const std::string& prefix, int dim, bool cross) {
  add_layer_norm(params, seed, prefix + ".ln_q", dim);
  if (cross) add_layer_norm(params, seed, prefix + ".ln_kv", dim);
  add_linear(params, seed, prefix + ".q", dim, dim);
  add_linear(params, seed, prefix + ".k", dim, dim);
  add_linear(params, seed, prefix + ".v", dim, dim);
  add_linear(params, seed, prefix + ".o", dim, dim);
  add_layer_norm(params, seed, prefix + ".ln_ffn", dim);
  add_linear(params, seed, prefix + ".ffn1", dim, dim * kFfnMult);
  add_linear(params, seed, prefix + ".ffn2", dim * kFfnMult, dim);
}

TensorPtr apply_dropout(const TensorPtr& x, const ForwardCtx& ctx) {
  if (!ctx.training || ctx.dropout == 0.0 || ctx.rng == nullptr) return x;
  return dropout(x, ctx.dropout, *ctx.rng, true);
}

TensorPtr block_attention(const TensorPtr& x, const TensorPtr& kv_src, const std::string& prefix,
                          ParamMap& params, int n_heads, const TensorPtr& mask,
                          const ForwardCtx& ctx, bool cross) {
  auto q_in = layer_norm(x, params.at(prefix + ".ln_q.g"), params.at(prefix + ".ln_q.b"));
  TensorPtr kv_in = cross ? layer_norm(kv_src, params.at(prefix + ".ln_kv.g"),
                                       params.at(prefix + ".ln_kv.b"))
                          : q_in;
  auto attn = multi_head_attention(
      linear(q_in, params.at(prefix + ".q.w"), params.at(prefix + ".q.b")),
      linear(kv_in, params.at(prefix + ".k.w"), params.at(prefix + ".k.b")),
      linear(kv_in, params.at(prefix + ".v.w"), params.at(prefix + ".v.b")), n_heads, mask,
      params.at(prefix + ".o.w"), params.at(prefix + ".o.b"));
  auto y = add(x, apply_dropout(attn, ctx));
  auto ffn_in = layer_norm(y, params.at(prefix + ".ln_ffn.g"), params.at(prefix + ".ln_ffn.b"));
  auto ffn = linear(gelu(linear(ffn_in, params.at(prefix + ".ffn1.w"), params.at(prefix + ".ffn1.b"))),
                    params.at(prefix + ".ffn2.w"), params.at(prefix + ".ffn2.b"));
  return add(y, apply_dropout(ffn, ctx));
}

TensorPtr positional_tensor(int len, int dim) {
  return Tensor::from_values({len, dim}, text::positional_encoding(len, dim));
}

}  // namespace

void AudioEncoderConfig::validate() const {
  if (n_mels < 1 || n_latents < 1 || latent_dim < 1 || n_heads < 1) {
    throw ConfigError("audio encoder dims must be positive");
  }
  if (latent_dim % n_heads != 0) throw ConfigError("latent_dim must be divisible by n_heads");
  if (latent_dim % 2 != 0) throw ConfigError("latent_dim must be even for positional encoding");
  if (n_cross_layers < 1 || n_self_layers < 0) throw ConfigError("bad audio layer counts");
  if (conv_kernel < 1 || conv_kernel % 2 == 0) throw ConfigError("conv_kernel must be odd");
}

void TextEncoderConfig::validate() const {
  if (dim < 1 || n_layers < 1 || n_heads < 1 || max_len < 2) {
    throw ConfigError("text encoder dims must be positive");
  }
  if (dim % n_heads != 0) throw ConfigError("text dim must be divisible by n_heads");
  if (dim % 2 != 0) throw ConfigError("text dim must be even for positional encoding");
  if (vocab_size != text::Vocabulary::kSize) throw ConfigError("unexpected vocabulary size");
}

void ModelConfig::validate() const {
  audio.validate();
  text.validate();
  if (proj_dim < 1) throw ConfigError("proj_dim must be positive");
  if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout must be in [0,1)");
}

void init_model_params(const ModelConfig& cfg, ParamMap& params, uint64_t seed) {
  cfg.validate();
  const int ad = cfg.audio.latent_dim;
  const int td = cfg.text.dim;

  add_param(params, seed, "audio.input_proj.w", {cfg.audio.n_mels, ad}, Init::kUniformFanIn,
            cfg.audio.n_mels);
  add_param(params, seed, "audio.input_proj.b", {ad}, Init::kZero);
  add_param(params, seed, "audio.conv.w", {cfg.audio.conv_kernel, ad, ad}, Init::kUniformFanIn,
            cfg.audio.conv_kernel * ad);
  add_param(params, seed, "audio.conv.b", {ad}, Init::kZero);
  add_param(params, seed, "audio.latents", {cfg.audio.n_latents, ad}, Init::kNormal02);
  for (int i = 0; i < cfg.audio.n_cross_layers; ++i) {
    add_block(params, seed, "audio.cross" + std::to_string(i), ad, /*cross=*/true);
  }
  for (int i = 0; i < cfg.audio.n_self_layers; ++i) {
    add_block(params, seed, "audio.self" + std::to_string(i), ad, /*cross=*/false);
  }

  add_param(params, seed, "text.embed", {cfg.text.vocab_size, td}, Init::kNormal02);
  for (int i = 0; i < cfg.text.n_layers; ++i) {
    add_block(params, seed, "text.layer" + std::to_string(i), td, /*cross=*/false);
  }

  add_linear(params, seed, "proj.audio.l1", ad, cfg.proj_dim);
  add_linear(params, seed, "proj.audio.l2", cfg.proj_dim, cfg.proj_dim);
  add_linear(params, seed, "proj.text.l1", td, cfg.proj_dim);
  add_linear(params, seed, "proj.text.l2", cfg.proj_dim, cfg.proj_dim);

  add_param(params, seed, "temp.log_scale_a", {1}, Init::kLogTau);
  add_param(params, seed, "temp.log_scale_t", {1}, Init::kLogTau);
}

TensorPtr audio_encoder_forward(const TensorPtr& mel, const AudioEncoderConfig& cfg,
                                ParamMap& params, const ForwardCtx& ctx) {
  if (mel->ndim() != 3 || mel->shape[2] != cfg.n_mels) {
    throw ArgumentError("audio encoder expects [B, T, n_mels] input");
  }
  const int b = mel->shape[0];
  const int t = mel->shape[1];
  if (t < 1) throw ArgumentError("audio encoder needs at least one frame");
  const int d = cfg.latent_dim;

  auto h = linear(mel, params.at("audio.input_proj.w"), params.at("audio.input_proj.b"));
  h = add(h, positional_tensor(t, d));
  auto kv = gelu(conv1d(h, params.at("audio.conv.w"), params.at("audio.conv.b")));

  // Tile the learned latent array across the batch.
  auto latents = reshape(params.at("audio.latents"), {1, cfg.n_latents, d});
  auto x = add(latents, Tensor::zeros({b, 1, 1}));
  for (int i = 0; i < cfg.n_cross_layers; ++i) {
    x = block_attention(x, kv, "audio.cross" + std::to_string(i), params, cfg.n_heads, nullptr,
                        ctx, /*cross=*/true);
  }
  for (int i = 0; i < cfg.n_self_layers; ++i) {
    x = block_attention(x, nullptr, "audio.self" + std::to_string(i), params, cfg.n_heads,
                        nullptr, ctx, /*cross=*/false);
  }
  return mean_axis(x, 1);
}

TensorPtr text_encoder_forward(const std::vector<text::TokenSequence>& tokens,
                               const TextEncoderConfig& cfg, ParamMap& params,
                               const ForwardCtx& ctx) {
  if (tokens.empty()) throw ArgumentError("text encoder needs a nonempty batch");
  for (const auto& seq : tokens) {
    if (static_cast<int>(seq.size()) > cfg.max_len) {
      throw ArgumentError("token sequence exceeds max_len " + std::to_string(cfg.max_len));
    }
  }
  const auto padded = text::pad_batch(tokens);
  const int b = static_cast<int>(padded.size());
  const int len = static_cast<int>(padded[0].size());
  const int d = cfg.dim;

  std::vector<int> ids;
  ids.reserve(static_cast<size_t>(b) * len);
  std::vector<double> mask_add(static_cast<size_t>(b) * len);
  std::vector<double> mask01(static_cast<size_t>(b) * len);
  std::vector<double> inv_counts(static_cast<size_t>(b));
  for (int i = 0; i < b; ++i) {
    int count = 0;
    for (int j = 0; j < len; ++j) {
      const int id = padded[static_cast<size_t>(i)].ids[static_cast<size_t>(j)];
      const int m = padded[static_cast<size_t>(i)].attention_mask[static_cast<size_t>(j)];
      ids.push_back(id);
      mask_add[static_cast<size_t>(i) * len + static_cast<size_t>(j)] =
          m ? 0.0 : kAttentionMaskValue;
      mask01[static_cast<size_t>(i) * len + static_cast<size_t>(j)] = m ? 1.0 : 0.0;
      count += m;
    }
    if (count == 0) throw ArgumentError("text sequence is all PAD");
    inv_counts[static_cast<size_t>(i)] = 1.0 / count;
  }

  auto x = embedding(params.at("text.embed"), ids, {b, len});
  x = add(x, positional_tensor(len, d));
  auto attn_mask = Tensor::from_values({b, 1, 1, len}, mask_add);
  for (int i = 0; i < cfg.n_layers; ++i) {
    x = block_attention(x, nullptr, "text.layer" + std::to_string(i), params, cfg.n_heads,
                        attn_mask, ctx, /*cross=*/false);
  }

  // Masked mean-pool over non-PAD positions.
  auto keep = Tensor::from_values({b, len, 1}, mask01);
  auto pooled = sum_axis(mul(x, keep), 1);  // [B, D]
  auto inv = Tensor::from_values({b, 1}, inv_counts);
  return mul(pooled, inv);
}

TensorPtr project(const TensorPtr& h, const std::string& head_prefix, const ParamMap& params) {
  auto u = linear(h, params.at(head_prefix + ".l1.w"), params.at(head_prefix + ".l1.b"));
  auto z = linear(gelu(u), params.at(head_prefix + ".l2.w"), params.at(head_prefix + ".l2.b"));
  return l2_normalize(add(z, u));
}

Model::Model(const ModelConfig& cfg, uint64_t init_seed) : config(cfg) {
  init_model_params(cfg, params, init_seed);
}

Model::Model(const ModelConfig& cfg, ParamMap p) : config(cfg), params(std::move(p)) {
  config.validate();
}

TensorPtr Model::embed_audio(const TensorPtr& mel, const ForwardCtx& ctx) {
  return project(audio_encoder_forward(mel, config.audio, params, ctx), "proj.audio", params);
}

TensorPtr Model::embed_text(const std::vector<text::TokenSequence>& tokens,
                            const ForwardCtx& ctx) {
  return project(text_encoder_forward(tokens, config.text, params, ctx), "proj.text", params);
}

}  // namespace duet::nn
