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

#ifndef DUET_AUGMENT_MULTILINGUAL_HPP_
#define DUET_AUGMENT_MULTILINGUAL_HPP_

#include <map>
#include <string>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::augment {

// Machine-translation slot; translate() must be stable across calls.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  virtual bool supports(const std::string& lang) const = 0;
  virtual std::string translate(const std::string& text, const std::string& lang) const = 0;
};

// Phrase-table stub: per language, longest-match substitution of known
// source phrases; unknown text passes through. The source language maps to
// the identity.
class LookupTranslationBackend : public TranslationBackend {
 public:
  // table[lang][source phrase] = translated phrase
  LookupTranslationBackend(std::string source_lang,
                           std::map<std::string, std::map<std::string, std::string>> table);

  // Loads the JSON shape {"source": "en", "table": {lang: {src: dst}}}.
  static LookupTranslationBackend from_json_file(const std::string& path);

  bool supports(const std::string& lang) const override;
  std::string translate(const std::string& text, const std::string& lang) const override;

 private:
  std::string source_lang_;
  std::map<std::string, std::map<std::string, std::string>> table_;
};

// Duplicates every clip once per language: audio shared by reference, text
// fields translated, language set per overlay. Output size is
// |clips| * |langs|.
std::vector<corpus::CaptionedClip> overlay_multilingual(
    const std::vector<corpus::CaptionedClip>& clips, const std::vector<std::string>& langs,
    const TranslationBackend& backend);

}  // namespace duet::augment

#endif  // DUET_AUGMENT_MULTILINGUAL_HPP_
