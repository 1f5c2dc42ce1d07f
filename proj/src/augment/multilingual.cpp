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

#include "duet/augment/multilingual.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "duet/error.hpp"

namespace duet::augment {

LookupTranslationBackend::LookupTranslationBackend(
    std::string source_lang, std::map<std::string, std::map<std::string, std::string>> table)
    : source_lang_(std::move(source_lang)), table_(std::move(table)) {}

LookupTranslationBackend LookupTranslationBackend::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open translation table: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("bad translation table JSON: " + std::string(e.what()));
  }
  std::map<std::string, std::map<std::string, std::string>> table;
  for (const auto& [lang, entries] : j.at("table").items()) {
    for (const auto& [src, dst] : entries.items()) {
      table[lang][src] = dst.get<std::string>();
    }
  }
  return LookupTranslationBackend(j.at("source").get<std::string>(), table);
}

bool LookupTranslationBackend::supports(const std::string& lang) const {
  return lang == source_lang_ || table_.count(lang) > 0;
}

std::string LookupTranslationBackend::translate(const std::string& text,
                                                const std::string& lang) const {
  if (lang == source_lang_) return text;
  const auto it = table_.find(lang);
  if (it == table_.end()) throw ArgumentError("unsupported language code: " + lang);

  // Longest-match substitution, left to right.
  std::vector<std::pair<std::string, std::string>> phrases(it->second.begin(), it->second.end());
  std::sort(phrases.begin(), phrases.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    bool matched = false;
    for (const auto& [src, dst] : phrases) {
      if (!src.empty() && text.compare(pos, src.size(), src) == 0) {
        out += dst;
        pos += src.size();
        matched = true;
        break;
      }
    }
    if (!matched) out += text[pos++];
  }
  return out;
}

std::vector<corpus::CaptionedClip> overlay_multilingual(
    const std::vector<corpus::CaptionedClip>& clips, const std::vector<std::string>& langs,
    const TranslationBackend& backend) {
  if (langs.empty()) throw ArgumentError("language list must be nonempty");
  for (const auto& lang : langs) {
    if (!backend.supports(lang)) throw ArgumentError("unsupported language code: " + lang);
  }
  std::vector<corpus::CaptionedClip> out;
  out.reserve(clips.size() * langs.size());
  for (const auto& clip : clips) {
    for (const auto& lang : langs) {
      corpus::CaptionedClip overlay = clip;  // audio samples shared by reference
      overlay.meta.key = clip.meta.key + "-" + lang;
      overlay.meta.language = lang;
      if (overlay.meta.transcription) {
        overlay.meta.transcription = backend.translate(*overlay.meta.transcription, lang);
      }
      if (overlay.meta.description) {
        overlay.meta.description = backend.translate(*overlay.meta.description, lang);
      }
      for (auto& tag : overlay.meta.tags) {
        tag = backend.translate(tag, lang);
      }
      out.push_back(std::move(overlay));
    }
  }
  return out;
}

}  // namespace duet::augment
