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

#include <cmath>

#include <doctest.h>

#include "duet/error.hpp"
#include "duet/random.hpp"
#include "duet/text/positional.hpp"
#include "duet/text/tokenizer.hpp"

using namespace duet;
using namespace duet::text;

namespace {

// UTF-8 encoder for the fuzz harness, independent of the tokenizer.
std::string encode_utf8(uint32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xc0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xe0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else {
    out += static_cast<char>(0xf0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  }
  return out;
}

std::string random_utf8(RandomStream& rng, size_t max_cps) {
  std::string out;
  const size_t n = rng.uniform_int(max_cps + 1);
  for (size_t i = 0; i < n; ++i) {
    uint32_t cp;
    do {
      cp = static_cast<uint32_t>(rng.uniform_int(0x110000));
    } while (cp >= 0xd800 && cp <= 0xdfff);  // skip surrogates
    out += encode_utf8(cp);
  }
  return out;
}

}  // namespace

TEST_SUITE("text") {

TEST_CASE("encode: empty string is [BOS, EOS]") {
  const auto t = encode("");
  REQUIRE(t.ids.size() == 2);
  CHECK(t.ids[0] == Vocabulary::kBos);
  CHECK(t.ids[1] == Vocabulary::kEos);
  CHECK(t.attention_mask == std::vector<int>{1, 1});
}

TEST_CASE("encode: bytes map to their own ids") {
  const auto t = encode("Ab");
  REQUIRE(t.ids.size() == 4);
  CHECK(t.ids[0] == Vocabulary::kBos);
  CHECK(t.ids[1] == 65);
  CHECK(t.ids[2] == 98);
  CHECK(t.ids[3] == Vocabulary::kEos);
}

TEST_CASE("encode never emits PAD; NUL byte maps to the escape id") {
  const std::string with_nul("a\0b", 3);
  const auto t = encode(with_nul);
  for (int id : t.ids) CHECK(id != Vocabulary::kPad);
  CHECK(t.ids[2] == Vocabulary::kNulByte);
  CHECK(decode(t) == with_nul);
}

TEST_CASE("decode strips specials and ignores PAD") {
  auto t = encode("hi");
  t.ids.push_back(Vocabulary::kPad);
  t.ids.push_back(Vocabulary::kPad);
  t.attention_mask.push_back(0);
  t.attention_mask.push_back(0);
  CHECK(decode(t) == "hi");

  TokenSequence empty;
  empty.ids = {Vocabulary::kBos, Vocabulary::kEos};
  empty.attention_mask = {1, 1};
  CHECK(decode(empty).empty());
}

TEST_CASE("decode rejects out-of-range ids") {
  TokenSequence t;
  t.ids = {Vocabulary::kSize};
  t.attention_mask = {1};
  CHECK_THROWS_AS(decode(t), ArgumentError);
  t.ids = {-1};
  CHECK_THROWS_AS(decode(t), ArgumentError);
}

TEST_CASE("round-trip property over random UTF-8") {
  RandomStream rng(123);
  for (int i = 0; i < 500; ++i) {
    const std::string s = random_utf8(rng, 64);
    CHECK(decode(encode(s)) == s);
  }
}

TEST_CASE("round-trip property over arbitrary byte strings") {
  RandomStream rng(321);
  for (int i = 0; i < 200; ++i) {
    std::string s;
    const size_t n = rng.uniform_int(64);
    for (size_t j = 0; j < n; ++j) s += static_cast<char>(rng.uniform_int(256));
    CHECK(decode(encode(s)) == s);
  }
}

TEST_CASE("pad_batch right-pads with PAD and zero mask") {
  auto batch = pad_batch({encode("a"), encode("abc")});
  REQUIRE(batch.size() == 2);
  CHECK(batch[0].ids.size() == batch[1].ids.size());
  CHECK(batch[0].ids.back() == Vocabulary::kPad);
  CHECK(batch[0].attention_mask.back() == 0);
  CHECK(batch[1].attention_mask.back() == 1);
}

TEST_CASE("positional encoding: row p=0 alternates 0 and 1") {
  const int dim = 8;
  const auto pe = positional_encoding(4, dim);
  for (int i = 0; i < dim / 2; ++i) {
    CHECK(pe[static_cast<size_t>(2 * i)] == 0.0);
    CHECK(pe[static_cast<size_t>(2 * i + 1)] == 1.0);
  }
}

TEST_CASE("positional encoding: every entry in [-1, 1]") {
  const auto pe = positional_encoding(64, 32);
  for (double v : pe) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("positional encoding: PE[1,0] = sin(1)") {
  const auto pe = positional_encoding(2, 16);
  CHECK(pe[16] == doctest::Approx(0.8414709848078965).epsilon(1e-12));
}

TEST_CASE("positional encoding: deterministic and dim must be even") {
  CHECK(positional_encoding(5, 6) == positional_encoding(5, 6));
  CHECK_THROWS_AS(positional_encoding(5, 7), ArgumentError);
  CHECK_THROWS_AS(positional_encoding(5, 0), ArgumentError);
}

}  // TEST_SUITE
