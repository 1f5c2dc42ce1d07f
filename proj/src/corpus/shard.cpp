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

#include "duet/corpus/shard.hpp"

#include <set>

#include <json.hpp>

#include "duet/corpus/tar.hpp"
#include "duet/corpus/wav.hpp"
#include "duet/error.hpp"

namespace duet::corpus {

using nlohmann::json;

std::string metadata_to_json(const ClipMetadata& meta) {
  json j;
  j["key"] = meta.key;
  if (meta.transcription) j["transcription"] = *meta.transcription;
  if (meta.description) j["description"] = *meta.description;
  if (meta.emotion) j["emotion"] = *meta.emotion;
  if (meta.gender) j["gender"] = gender_to_string(*meta.gender);
  j["language"] = meta.language;
  j["tags"] = meta.tags;
  j["sample_rate"] = meta.sample_rate;
  j["duration"] = meta.duration;
  return j.dump();
}

ClipMetadata metadata_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("bad metadata JSON: ") + e.what());
  }
  ClipMetadata meta;
  try {
    meta.key = j.at("key").get<std::string>();
    if (j.contains("transcription")) meta.transcription = j["transcription"].get<std::string>();
    if (j.contains("description")) meta.description = j["description"].get<std::string>();
    if (j.contains("emotion")) meta.emotion = j["emotion"].get<std::string>();
    if (j.contains("gender")) meta.gender = gender_from_string(j["gender"].get<std::string>());
    meta.language = j.at("language").get<std::string>();
    meta.tags = j.at("tags").get<std::vector<std::string>>();
    meta.sample_rate = j.at("sample_rate").get<int>();
    meta.duration = j.at("duration").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad metadata fields: ") + e.what());
  }
  return meta;
}

Shard write_shard(const std::vector<CaptionedClip>& clips, const std::string& path) {
  std::set<std::string> seen;
  for (const auto& clip : clips) {
    validate_clip(clip);
    if (!seen.insert(clip.meta.key).second) {
      throw FormatError("duplicate key in shard: " + clip.meta.key);
    }
  }
  TarWriter tar(path);
  for (const auto& clip : clips) {
    tar.add_file(clip.meta.key + ".wav", encode_wav(clip.audio));
    const std::string meta = metadata_to_json(clip.meta);
    tar.add_file(clip.meta.key + ".json",
                 reinterpret_cast<const uint8_t*>(meta.data()), meta.size());
  }
  tar.finish();
  return Shard{path, clips.size()};
}

namespace {

struct PendingEntry {
  std::string key;
  std::optional<std::vector<uint8_t>> wav;
  std::optional<std::string> meta;
};

std::pair<std::string, std::string> split_member(const std::string& name) {
  const auto dot = name.rfind('.');
  if (dot == std::string::npos || dot == 0) {
    throw FormatError("shard member without extension: " + name);
  }
  return {name.substr(0, dot), name.substr(dot + 1)};
}

}  // namespace

struct ShardReader::Impl {
  TarReader tar;
  std::string path;
  std::string last_complete_key;
  std::optional<TarEntry> lookahead;
  bool done = false;

  explicit Impl(const std::string& p) : tar(p), path(p) {}

  std::optional<TarEntry> pull() {
    if (lookahead) {
      auto e = std::move(lookahead);
      lookahead.reset();
      return e;
    }
    try {
      return tar.next();
    } catch (const FormatError& e) {
      throw FormatError(std::string(e.what()) + " (last complete key: " +
                        (last_complete_key.empty() ? "<none>" : last_complete_key) + ")");
    }
  }

  std::optional<CaptionedClip> next() {
    if (done) return std::nullopt;
    auto first = pull();
    if (!first) {
      done = true;
      return std::nullopt;
    }
    auto [key, ext] = split_member(first->name);
    PendingEntry pending;
    pending.key = key;
    if (ext == "wav") {
      pending.wav = std::move(first->data);
    } else if (ext == "json") {
      pending.meta = std::string(first->data.begin(), first->data.end());
    } else {
      throw FormatError("unexpected member " + first->name + " in " + path);
    }

    auto second = pull();
    if (!second) {
      throw FormatError("orphan member for key " + pending.key + " in " + path);
    }
    auto [key2, ext2] = split_member(second->name);
    if (key2 != pending.key) {
      throw FormatError("orphan member for key " + pending.key + " in " + path +
                        " (next member is " + second->name + ")");
    }
    if (ext2 == "wav" && !pending.wav) {
      pending.wav = std::move(second->data);
    } else if (ext2 == "json" && !pending.meta) {
      pending.meta = std::string(second->data.begin(), second->data.end());
    } else {
      throw FormatError("duplicate ." + ext2 + " member for key " + pending.key);
    }

    CaptionedClip clip;
    clip.meta = metadata_from_json(*pending.meta);
    if (clip.meta.key != pending.key) {
      throw FormatError("metadata key " + clip.meta.key + " disagrees with member name " +
                        pending.key);
    }
    clip.audio = decode_wav(*pending.wav);
    last_complete_key = pending.key;
    return clip;
  }
};

ShardReader::ShardReader(const std::string& path) : impl_(std::make_unique<Impl>(path)) {}
ShardReader::~ShardReader() = default;
ShardReader::ShardReader(ShardReader&&) noexcept = default;
ShardReader& ShardReader::operator=(ShardReader&&) noexcept = default;

std::optional<CaptionedClip> ShardReader::next() { return impl_->next(); }

std::vector<CaptionedClip> read_shard(const std::string& path) {
  ShardReader reader(path);
  std::vector<CaptionedClip> clips;
  while (auto clip = reader.next()) {
    clips.push_back(std::move(*clip));
  }
  return clips;
}

}  // namespace duet::corpus
