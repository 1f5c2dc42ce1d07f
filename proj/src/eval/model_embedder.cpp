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

#include "duet/eval/model_embedder.hpp"

#include "duet/dsp/mel.hpp"

namespace duet::eval {

ModelEmbedder::ModelEmbedder(nn::Model& model, int max_frames, uint64_t seed)
    : model_(model), max_frames_(max_frames), rng_(seed) {}

Vec ModelEmbedder::embed_audio(const corpus::CaptionedClip& clip) {
  std::vector<dsp::MelSpectrogram> specs;
  specs.push_back(dsp::log_mel(clip.audio));
  auto padded = dsp::batch_pad_or_truncate(specs, rng_, max_frames_);
  auto mel = nn::Tensor::from_values({1, padded.n_frames, dsp::kNumMels}, std::move(padded.mels));
  auto z = model_.embed_audio(mel);
  return Vec(z->value.begin(), z->value.end());
}

Vec ModelEmbedder::embed_text(const std::string& text) {
  auto z = model_.embed_text({text::encode(text)});
  return Vec(z->value.begin(), z->value.end());
}

int ModelEmbedder::dim() const { return model_.config.proj_dim; }

}  // namespace duet::eval
