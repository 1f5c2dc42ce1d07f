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

#ifndef DUET_CORPUS_SYNTHESIS_HPP_
#define DUET_CORPUS_SYNTHESIS_HPP_

#include <string>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::corpus {

// Speech-synthesiser slot: emits 48 kHz audio plus the transcript it spoke.
class SynthesisBackend {
 public:
  virtual ~SynthesisBackend() = default;
  virtual Waveform synthesize(const std::string& text) = 0;
};

// Deterministic tone generator: 50 ms per character, frequency derived from
// a hash of the text, so durations and spectra are testable offline.
class StubToneSynthesizer : public SynthesisBackend {
 public:
  explicit StubToneSynthesizer(uint64_t seed = 0) : seed_(seed) {}
  Waveform synthesize(const std::string& text) override;

  static constexpr double kSecondsPerChar = 0.05;

 private:
  uint64_t seed_;
};

// Rule-based string tokenizer: splits on sentence terminators, keeps the
// terminator, trims surrounding whitespace, drops empty units.
struct TokenizerRules {
  std::string terminators = ".!?";
};

std::vector<std::string> split_text_units(const std::string& text, const TokenizerRules& rules);

struct SynthesisReport {
  size_t produced = 0;
  size_t skipped = 0;
};

// One clip per segmented text unit; failures of individual units are skipped
// and counted in the report.
std::vector<CaptionedClip> synthesize_pairs(const std::vector<std::string>& texts,
                                            const TokenizerRules& rules,
                                            SynthesisBackend& backend,
                                            const std::string& language = "en",
                                            SynthesisReport* report = nullptr);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_SYNTHESIS_HPP_
