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

#include "duet/augment/caption.hpp"

#include "duet/error.hpp"

namespace duet::augment {

TextComposer identity_composer() {
  return [](const std::string& s) { return s; };
}

namespace {

// Resolves a named slot to its text, or empty when the metadata field is
// absent. Throws TemplateError for a name that maps to nothing at all.
std::string resolve_slot(const std::string& name, const std::string& t_i, const std::string& t_j,
                         const corpus::ClipMetadata& meta, const CaptionSchema& schema) {
  if (name == "t_i") return t_i;
  if (name == "t_j") return t_j;
  const auto mapped = schema.slot_map.find(name);
  const std::string field = mapped != schema.slot_map.end() ? mapped->second : name;
  if (field == "transcription") return meta.transcription.value_or("");
  if (field == "description") return meta.description.value_or("");
  if (field == "emotion") return meta.emotion.value_or("");
  if (field == "gender") return meta.gender ? corpus::gender_to_string(*meta.gender) : "";
  if (field == "language") return meta.language;
  if (field == "key") return meta.key;
  if (field == "tag" || field == "label") return meta.tags.empty() ? "" : meta.tags.front();
  throw TemplateError("unresolved caption slot: {" + name + "}");
}

std::vector<std::string> split_clauses(const std::string& text) {
  std::vector<std::string> clauses;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      clauses.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  clauses.push_back(current);
  return clauses;
}

}  // namespace

std::string compose_caption(const CaptionSchema& schema, const std::string& t_i,
                            const std::string& t_j, const corpus::ClipMetadata& meta) {
  const std::vector<std::string> positional = {t_i, t_j};
  size_t next_positional = 0;

  std::vector<std::string> kept;
  for (const std::string& clause : split_clauses(schema.prefix)) {
    std::string filled;
    bool drop = false;
    size_t i = 0;
    while (i < clause.size()) {
      if (clause[i] != '{') {
        filled += clause[i++];
        continue;
      }
      const size_t close = clause.find('}', i);
      if (close == std::string::npos) {
        throw TemplateError("unterminated slot in template: " + schema.prefix);
      }
      const std::string name = clause.substr(i + 1, close - i - 1);
      std::string value;
      if (name.empty()) {
        if (next_positional >= positional.size()) {
          throw TemplateError("unresolved caption slot: more {} slots than inputs");
        }
        value = positional[next_positional++];
      } else {
        value = resolve_slot(name, t_i, t_j, meta, schema);
      }
      if (value.empty()) drop = true;
      filled += value;
      i = close + 1;
    }
    if (!drop) kept.push_back(filled);
  }

  std::string out;
  for (size_t i = 0; i < kept.size(); ++i) {
    if (i > 0) out += ',';
    out += kept[i];
  }
  return schema.composer(out);
}

std::string fuse_captions(const std::vector<std::string>& c_v, const std::string& c_t,
                          const TextComposer& composer) {
  if (c_v.empty()) return c_t;
  std::string visuals;
  for (size_t i = 0; i < c_v.size(); ++i) {
    if (i > 0) visuals += "; ";
    visuals += c_v[i];
  }
  if (c_t.empty()) return composer("Visuals: " + visuals);
  return composer(c_t + ". Visuals: " + visuals);
}

}  // namespace duet::augment
