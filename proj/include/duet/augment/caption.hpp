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

#ifndef DUET_AUGMENT_CAPTION_HPP_
#define DUET_AUGMENT_CAPTION_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::augment {

// Text-refinement slot; an LLM would sit here. The stub is the identity, so
// composed captions are the exact template substitution.
using TextComposer = std::function<std::string(const std::string&)>;

TextComposer identity_composer();

// Template with positional `{}` slots (filled from t_i then t_j) and named
// `{name}` slots resolved through slot_map / metadata. A clause (comma
// separated) whose slot resolves to an empty string is dropped whole.
struct CaptionSchema {
  std::string prefix;
  TextComposer composer = identity_composer();
  // slot name -> metadata field name; identity when a slot is missing here
  std::map<std::string, std::string> slot_map;
};

std::string compose_caption(const CaptionSchema& schema, const std::string& t_i,
                            const std::string& t_j, const corpus::ClipMetadata& meta);

// Stub fusion: "{c_t}. Visuals: {c_v joined by '; '}"; empty c_v leaves c_t
// unchanged.
std::string fuse_captions(const std::vector<std::string>& c_v, const std::string& c_t,
                          const TextComposer& composer = identity_composer());

}  // namespace duet::augment

#endif  // DUET_AUGMENT_CAPTION_HPP_
