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

#include "duet/text/tokenizer.hpp"

#include <algorithm>

#include "duet/error.hpp"

namespace duet::text {

TokenSequence encode(const std::string& s) {
  TokenSequence t;
  t.ids.reserve(s.size() + 2);
  t.ids.push_back(Vocabulary::kBos);
  for (unsigned char c : s) {
    t.ids.push_back(c == 0 ? Vocabulary::kNulByte : static_cast<int>(c));
  }
  t.ids.push_back(Vocabulary::kEos);
  t.attention_mask.assign(t.ids.size(), 1);
  return t;
}

std::string decode(const TokenSequence& t) {
  std::string out;
  for (size_t i = 0; i < t.ids.size(); ++i) {
    const int id = t.ids[i];
    if (id < 0 || id >= Vocabulary::kSize) {
      throw ArgumentError("invalid token id " + std::to_string(id));
    }
    if (id == Vocabulary::kPad || id == Vocabulary::kBos || id == Vocabulary::kEos) continue;
    out += (id == Vocabulary::kNulByte) ? '\0' : static_cast<char>(id);
  }
  return out;
}

std::vector<TokenSequence> pad_batch(std::vector<TokenSequence> batch) {
  size_t max_len = 0;
  for (const auto& t : batch) max_len = std::max(max_len, t.ids.size());
  for (auto& t : batch) {
    t.ids.resize(max_len, Vocabulary::kPad);
    t.attention_mask.resize(max_len, 0);
  }
  return batch;
}

}  // namespace duet::text
