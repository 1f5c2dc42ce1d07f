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

#ifndef DUET_EVAL_MODEL_EMBEDDER_HPP_
#define DUET_EVAL_MODEL_EMBEDDER_HPP_

#include "duet/eval/zero_shot.hpp"
#include "duet/nn/encoders.hpp"
#include "duet/random.hpp"

namespace duet::eval {

// Embedder over a frozen Model: log-mel front-end plus the audio tower for
// clips, tokenizer plus the text tower for prompts. The rng only drives
// truncation of clips longer than max_frames.
class ModelEmbedder : public Embedder {
 public:
  ModelEmbedder(nn::Model& model, int max_frames, uint64_t seed);

  Vec embed_audio(const corpus::CaptionedClip& clip) override;
  Vec embed_text(const std::string& text) override;
  int dim() const override;

 private:
  nn::Model& model_;
  int max_frames_;
  RandomStream rng_;
};

}  // namespace duet::eval

#endif  // DUET_EVAL_MODEL_EMBEDDER_HPP_
