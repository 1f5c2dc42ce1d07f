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

#include "duet/eval/zero_shot.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "duet/error.hpp"

namespace duet::eval {

Mat embed_prompts(const std::vector<std::string>& labels, const PromptTemplate& t,
                  Embedder& model) {
  Mat out;
  out.reserve(labels.size());
  for (const auto& label : labels) {
    out.push_back(model.embed_text(build_prompt(t, label)));
  }
  return out;
}

int argmax_cosine(const Vec& z, const Mat& prompt_z) {
  if (prompt_z.empty()) throw ArgumentError("no prompts");
  int best = 0;
  double best_score = -2.0;
  for (int i = 0; i < static_cast<int>(prompt_z.size()); ++i) {
    const auto& p = prompt_z[static_cast<size_t>(i)];
    if (p.size() != z.size()) throw ArgumentError("prompt/query dims disagree");
    double dot = 0.0;
    for (size_t j = 0; j < p.size(); ++j) dot += p[j] * z[j];
    if (dot > best_score) {
      best_score = dot;
      best = i;
    }
  }
  return best;
}

ZeroShotResult zero_shot_classify(const Vec& audio_z, const std::vector<std::string>& labels,
                                  const PromptTemplate& t, Embedder& model) {
  if (labels.size() < 2) throw ArgumentError("zero-shot needs at least 2 labels");
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size()) throw ArgumentError("duplicate labels");

  const Mat prompt_z = embed_prompts(labels, t, model);
  ZeroShotResult result;
  result.index = argmax_cosine(audio_z, prompt_z);
  result.label = labels[static_cast<size_t>(result.index)];
  result.scores.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    double dot = 0.0;
    for (size_t j = 0; j < audio_z.size(); ++j) dot += audio_z[j] * prompt_z[i][j];
    result.scores[i] = dot;
  }
  return result;
}

namespace {

std::string word_label(const corpus::ClipMetadata& meta) {
  if (!meta.tags.empty()) return meta.tags.front();
  if (meta.transcription) return *meta.transcription;
  throw ArgumentError("keyword clip " + meta.key + " has no word label");
}

}  // namespace

std::vector<KwsLanguageReport> kws_accuracy(Embedder& model,
                                            const std::vector<corpus::CaptionedClip>& word_clips,
                                            const PromptTemplate& t) {
  std::map<std::string, std::vector<const corpus::CaptionedClip*>> by_language;
  for (const auto& clip : word_clips) {
    by_language[clip.meta.language].push_back(&clip);
  }
  std::vector<KwsLanguageReport> reports;
  for (const auto& [language, clips] : by_language) {
    std::set<std::string> words;
    for (const auto* clip : clips) words.insert(word_label(clip->meta));
    if (words.size() < 2) {
      throw ArgumentError("language " + language + " needs >= 2 distinct words");
    }
    const std::vector<std::string> labels(words.begin(), words.end());
    const Mat prompt_z = embed_prompts(labels, t, model);

    int correct = 0;
    for (const auto* clip : clips) {
      const Vec z = model.embed_audio(*clip);
      const int predicted = argmax_cosine(z, prompt_z);
      if (labels[static_cast<size_t>(predicted)] == word_label(clip->meta)) ++correct;
    }
    KwsLanguageReport report;
    report.language = language;
    report.n_samples = static_cast<int>(clips.size());
    report.n_words = static_cast<int>(words.size());
    report.accuracy = static_cast<double>(correct) / static_cast<double>(clips.size());
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace duet::eval
