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

#ifndef DUET_CORPUS_SEGMENTATION_HPP_
#define DUET_CORPUS_SEGMENTATION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::corpus {

enum class SegmentationMode { kForcedAlign, kAsr };

struct Segment {
  size_t begin_sample = 0;
  size_t end_sample = 0;  // exclusive
  std::optional<std::string> transcription;
};

// Pluggable segmentation slot. Real deployments would put a forced aligner
// or an ASR system behind this; the repo ships deterministic stubs.
class SegmentationBackend {
 public:
  virtual ~SegmentationBackend() = default;
  virtual SegmentationMode mode() const = 0;
  // Segments must be within bounds, non-overlapping and time-ordered,
  // each at most max_len seconds.
  virtual std::vector<Segment> segment(const CaptionedClip& clip, double max_len) = 0;
};

// Spreads the transcript's words uniformly over the clip duration and cuts
// at the latest word boundary that keeps a segment under max_len.
class StubUniformAligner : public SegmentationBackend {
 public:
  SegmentationMode mode() const override { return SegmentationMode::kForcedAlign; }
  std::vector<Segment> segment(const CaptionedClip& clip, double max_len) override;
};

// Pass-through "ASR": cuts at uniform max_len boundaries. When the clip has
// a transcript its words are attributed to segments by time; otherwise the
// segments carry no transcription.
class StubPassthroughAsr : public SegmentationBackend {
 public:
  SegmentationMode mode() const override { return SegmentationMode::kAsr; }
  std::vector<Segment> segment(const CaptionedClip& clip, double max_len) override;
};

constexpr double kDefaultMaxSegmentSeconds = 10.0;

// Splits a clip longer than max_len into key-suffixed sub-clips. Clips at or
// under max_len are returned unchanged. Requires backend mode asr when the
// clip has no ground-truth transcript.
std::vector<CaptionedClip> segment_long_audio(const CaptionedClip& clip,
                                              SegmentationBackend& backend,
                                              double max_len = kDefaultMaxSegmentSeconds);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_SEGMENTATION_HPP_
