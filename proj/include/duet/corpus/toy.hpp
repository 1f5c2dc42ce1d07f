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

#ifndef DUET_CORPUS_TOY_HPP_
#define DUET_CORPUS_TOY_HPP_

#include <array>
#include <string>
#include <vector>

#include "duet/corpus/shard.hpp"
#include "duet/corpus/types.hpp"

namespace duet::corpus {

// Four acoustically distinct classes, 1 s each at 48 kHz with random phase
// and gain, captioned as "The sound of {label}".
inline constexpr std::array<const char*, 4> kToyClassLabels = {
    "a 440 hertz tone",
    "an 880 hertz tone",
    "white noise",
    "a rising chirp",
};

struct ToyDataset {
  std::vector<CaptionedClip> train;
  std::vector<CaptionedClip> val;
  std::vector<CaptionedClip> test;
};

// Pure function of (seed, n_per_class); splits 80/10/10 per class with at
// least one clip of every class in each split. Requires n_per_class >= 3.
ToyDataset generate_toy_dataset(uint64_t seed, int n_per_class);

struct ToyShards {
  Shard train;
  Shard val;
  Shard test;
};

// Writes train.tar / val.tar / test.tar under out_dir.
ToyShards write_toy_dataset(uint64_t seed, int n_per_class, const std::string& out_dir);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_TOY_HPP_
