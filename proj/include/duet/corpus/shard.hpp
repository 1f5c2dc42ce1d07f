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

#ifndef DUET_CORPUS_SHARD_HPP_
#define DUET_CORPUS_SHARD_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::corpus {

// On-disk shard: a tar archive with `<key>.wav` (RIFF PCM16 LE mono 48 kHz)
// followed by `<key>.json` (UTF-8, no BOM) per clip, in input order.
struct Shard {
  std::string path;
  size_t n_entries = 0;
};

Shard write_shard(const std::vector<CaptionedClip>& clips, const std::string& path);

// Streams clips in archive order with constant memory per clip.
class ShardReader {
 public:
  explicit ShardReader(const std::string& path);
  ~ShardReader();
  ShardReader(ShardReader&&) noexcept;
  ShardReader& operator=(ShardReader&&) noexcept;

  // nullopt at end of archive. Throws FormatError on orphan members or
  // truncation (naming the last complete key).
  std::optional<CaptionedClip> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<CaptionedClip> read_shard(const std::string& path);

// JSON codec for the metadata member; absent optionals are omitted.
std::string metadata_to_json(const ClipMetadata& meta);
ClipMetadata metadata_from_json(const std::string& text);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_SHARD_HPP_
