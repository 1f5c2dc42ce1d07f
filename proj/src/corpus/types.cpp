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

#include "duet/corpus/types.hpp"

#include <cmath>

#include "duet/error.hpp"

namespace duet::corpus {

std::string gender_to_string(Gender g) {
  switch (g) {
    case Gender::kMale:
      return "male";
    case Gender::kFemale:
      return "female";
    case Gender::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Gender gender_from_string(const std::string& s) {
  if (s == "male") return Gender::kMale;
  if (s == "female") return Gender::kFemale;
  if (s == "unknown") return Gender::kUnknown;
  throw FormatError("invalid gender label: " + s);
}

void validate_metadata(const ClipMetadata& meta) {
  if (meta.key.empty()) throw ArgumentError("clip key must be nonempty");
  if (meta.language.empty()) throw ArgumentError("language must be nonempty for key " + meta.key);
  if (meta.sample_rate != kStoredSampleRate) {
    throw ArgumentError("stored clips must be 48000 Hz, got " +
                        std::to_string(meta.sample_rate) + " for key " + meta.key);
  }
  if (!(meta.duration > 0.0)) {
    throw ArgumentError("duration must be > 0 for key " + meta.key);
  }
}

void validate_clip(const CaptionedClip& clip) {
  validate_metadata(clip.meta);
  const auto& s = clip.audio.data();
  if (s.empty()) throw ArgumentError("waveform must be nonempty for key " + clip.meta.key);
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw ArgumentError("waveform has non-finite sample for key " + clip.meta.key);
    }
  }
  if (clip.audio.sample_rate != clip.meta.sample_rate) {
    throw ArgumentError("waveform rate disagrees with metadata for key " + clip.meta.key);
  }
}

std::string training_caption(const ClipMetadata& meta) {
  if (meta.description && !meta.description->empty()) return *meta.description;
  if (meta.transcription && !meta.transcription->empty()) {
    std::string who = meta.gender ? gender_to_string(*meta.gender) : "person";
    if (who == "unknown") who = "person";
    std::string out = "A " + who + " saying " + *meta.transcription;
    if (meta.emotion && !meta.emotion->empty()) {
      out += " in a " + *meta.emotion + " voice";
    }
    return out;
  }
  if (!meta.tags.empty()) return "The sound of " + meta.tags.front();
  return meta.key;
}

}  // namespace duet::corpus
