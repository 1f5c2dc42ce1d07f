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

#ifndef DUET_EVAL_ZERO_SHOT_HPP_
#define DUET_EVAL_ZERO_SHOT_HPP_

#include <string>
#include <vector>

#include "duet/corpus/types.hpp"
#include "duet/eval/metrics.hpp"
#include "duet/eval/templates.hpp"

namespace duet::eval {

// Read-only view over a frozen model: maps clips and text into the shared
// unit-norm embedding space. Tests can substitute fakes.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual Vec embed_audio(const corpus::CaptionedClip& clip) = 0;
  virtual Vec embed_text(const std::string& text) = 0;
  virtual int dim() const = 0;
};

// One unit-norm prompt embedding per label, in label order.
Mat embed_prompts(const std::vector<std::string>& labels, const PromptTemplate& t, Embedder& model);

// Highest cosine score, ties broken by lowest index.
int argmax_cosine(const Vec& z, const Mat& prompt_z);

struct ZeroShotResult {
  int index = 0;
  std::string label;
  Vec scores;
};

// Requires >= 2 distinct labels.
ZeroShotResult zero_shot_classify(const Vec& audio_z, const std::vector<std::string>& labels,
                                  const PromptTemplate& t, Embedder& model);

struct KwsLanguageReport {
  std::string language;
  int n_samples = 0;
  int n_words = 0;
  double accuracy = 0.0;
};

// Per-language zero-shot keyword accuracy: each language's word inventory
// (first tag, falling back to transcription) is the label set. Languages
// need >= 2 distinct words.
std::vector<KwsLanguageReport> kws_accuracy(Embedder& model,
                                            const std::vector<corpus::CaptionedClip>& word_clips,
                                            const PromptTemplate& t = default_template(Task::kKeyword));

}  // namespace duet::eval

#endif  // DUET_EVAL_ZERO_SHOT_HPP_
