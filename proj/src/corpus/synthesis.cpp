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

#include "duet/corpus/synthesis.hpp"

#include <cmath>

#include "duet/corpus/wav.hpp"
#include "duet/error.hpp"

namespace duet::corpus {

namespace {

uint64_t fnv1a(const std::string& text, uint64_t seed) {
  uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

Waveform StubToneSynthesizer::synthesize(const std::string& text) {
  if (text.empty()) throw ArgumentError("cannot synthesize empty text");
  const size_t n = static_cast<size_t>(
      std::llround(kSecondsPerChar * static_cast<double>(text.size()) * kStoredSampleRate));
  // frequency in [200, 2200) Hz, tied to the text so distinct units differ
  const uint64_t h = fnv1a(text, seed_);
  const double freq = 200.0 + static_cast<double>(h % 2000ull);
  std::vector<double> samples(n);
  const double w = 2.0 * 3.14159265358979323846 * freq / kStoredSampleRate;
  for (size_t i = 0; i < n; ++i) {
    samples[i] = 0.5 * std::sin(w * static_cast<double>(i));
  }
  return Waveform(quantize_to_grid(samples), kStoredSampleRate);
}

std::vector<std::string> split_text_units(const std::string& text, const TokenizerRules& rules) {
  std::vector<std::string> units;
  std::string current;
  for (char c : text) {
    current += c;
    if (rules.terminators.find(c) != std::string::npos) {
      const std::string unit = trim(current);
      if (!unit.empty()) units.push_back(unit);
      current.clear();
    }
  }
  const std::string rest = trim(current);
  if (!rest.empty()) units.push_back(rest);
  return units;
}

std::vector<CaptionedClip> synthesize_pairs(const std::vector<std::string>& texts,
                                            const TokenizerRules& rules,
                                            SynthesisBackend& backend,
                                            const std::string& language,
                                            SynthesisReport* report) {
  if (texts.empty()) throw ArgumentError("texts must be nonempty");
  std::vector<CaptionedClip> clips;
  size_t skipped = 0;
  size_t index = 0;
  for (const auto& text : texts) {
    for (const auto& unit : split_text_units(text, rules)) {
      try {
        CaptionedClip clip;
        clip.audio = backend.synthesize(unit);
        clip.meta.key = "syn-" + std::to_string(index);
        clip.meta.transcription = unit;
        clip.meta.language = language;
        clip.meta.sample_rate = clip.audio.sample_rate;
        clip.meta.duration = clip.audio.duration_seconds();
        validate_clip(clip);
        clips.push_back(std::move(clip));
        ++index;
      } catch (const std::exception&) {
        ++skipped;
      }
    }
  }
  if (report) {
    report->produced = clips.size();
    report->skipped = skipped;
  }
  return clips;
}

}  // namespace duet::corpus
