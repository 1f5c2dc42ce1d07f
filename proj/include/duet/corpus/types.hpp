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

#ifndef DUET_CORPUS_TYPES_HPP_
#define DUET_CORPUS_TYPES_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace duet::corpus {

constexpr int kStoredSampleRate = 48000;

enum class Gender { kMale, kFemale, kUnknown };

std::string gender_to_string(Gender g);
Gender gender_from_string(const std::string& s);

// Raw audio. Samples are shared so that augmentation overlays can duplicate
// a clip without copying a second of 48 kHz audio per language.
struct Waveform {
  std::shared_ptr<const std::vector<double>> samples;
  int sample_rate = kStoredSampleRate;

  Waveform() : samples(std::make_shared<std::vector<double>>()) {}
  Waveform(std::vector<double> s, int rate)
      : samples(std::make_shared<std::vector<double>>(std::move(s))), sample_rate(rate) {}

  const std::vector<double>& data() const { return *samples; }
  size_t size() const { return samples->size(); }
  double duration_seconds() const {
    return static_cast<double>(samples->size()) / sample_rate;
  }
};

struct ClipMetadata {
  std::string key;
  std::optional<std::string> transcription;
  std::optional<std::string> description;
  std::optional<std::string> emotion;
  std::optional<Gender> gender;
  std::string language;  // ISO-639, nonempty
  std::vector<std::string> tags;
  int sample_rate = kStoredSampleRate;
  double duration = 0.0;  // seconds, > 0
};

struct CaptionedClip {
  ClipMetadata meta;
  Waveform audio;
};

// Throws ArgumentError when an invariant is violated.
void validate_metadata(const ClipMetadata& meta);
void validate_clip(const CaptionedClip& clip);

// The text actually paired with the audio during training: the description
// when present, otherwise a rendered metadata sentence, otherwise the first
// tag wrapped in the sound template.
std::string training_caption(const ClipMetadata& meta);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_TYPES_HPP_
