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

#ifndef DUET_TEXT_TOKENIZER_HPP_
#define DUET_TEXT_TOKENIZER_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace duet::text {

// Byte-level vocabulary: language-universal and fixed-size. Bytes 1..255 map
// to their own id; PAD holds id 0, so the NUL byte gets the id after EOS to
// keep the id<->symbol map bijective over all byte values.
struct Vocabulary {
  static constexpr int kPad = 0;
  static constexpr int kBos = 256;
  static constexpr int kEos = 257;
  static constexpr int kNulByte = 258;  // id for byte 0x00
  static constexpr int kSize = 259;
};

struct TokenSequence {
  std::vector<int> ids;
  std::vector<int> attention_mask;  // 1 on non-PAD positions

  size_t size() const { return ids.size(); }
};

// BOS + bytes + EOS; never emits PAD.
TokenSequence encode(const std::string& s);

// Inverse of encode; PAD ignored, BOS/EOS stripped. Throws ArgumentError on
// an out-of-range id.
std::string decode(const TokenSequence& t);

// Right-pads every sequence to the longest one with PAD ids and 0 mask.
std::vector<TokenSequence> pad_batch(std::vector<TokenSequence> batch);

}  // namespace duet::text

#endif  // DUET_TEXT_TOKENIZER_HPP_
