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

#include "duet/corpus/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duet/error.hpp"

namespace duet::corpus {

namespace {

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string join_words(const std::vector<std::string>& words, size_t begin, size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

// Packs uniform word spans into segments of at most max_len seconds, cutting
// at word boundaries. A single word longer than max_len is hard-cut.
std::vector<Segment> pack_word_boundaries(size_t n_samples, int rate,
                                          const std::vector<std::string>& words,
                                          double max_len) {
  const size_t max_samples = static_cast<size_t>(std::floor(max_len * rate));
  std::vector<Segment> segments;
  const size_t n_words = words.size();
  // word w covers samples [w * n/W, (w+1) * n/W)
  std::vector<size_t> bounds(n_words + 1);
  for (size_t w = 0; w <= n_words; ++w) {
    bounds[w] = n_samples * w / n_words;
  }
  size_t word = 0;
  size_t start = 0;
  size_t start_word = 0;
  while (word < n_words) {
    // extend to the furthest word boundary within max_samples of start
    size_t next = word + 1;
    while (next < n_words && bounds[next + 1] - start <= max_samples) ++next;
    if (bounds[next] - start > max_samples) {
      // a single word exceeds max_len: hard-cut inside it
      Segment seg;
      seg.begin_sample = start;
      seg.end_sample = start + max_samples;
      seg.transcription = join_words(words, start_word, next);
      segments.push_back(seg);
      start = seg.end_sample;
      if (start >= bounds[next]) {
        word = next;
        start_word = next;
      }
      continue;
    }
    Segment seg;
    seg.begin_sample = start;
    seg.end_sample = bounds[next];
    seg.transcription = join_words(words, start_word, next);
    segments.push_back(seg);
    start = bounds[next];
    word = next;
    start_word = next;
  }
  return segments;
}

}  // namespace

std::vector<Segment> StubUniformAligner::segment(const CaptionedClip& clip, double max_len) {
  if (!clip.meta.transcription || clip.meta.transcription->empty()) {
    throw ArgumentError("forced-align backend requires a transcript for key " + clip.meta.key);
  }
  const auto words = split_words(*clip.meta.transcription);
  if (words.empty()) {
    throw ArgumentError("transcript has no words for key " + clip.meta.key);
  }
  return pack_word_boundaries(clip.audio.size(), clip.audio.sample_rate, words, max_len);
}

std::vector<Segment> StubPassthroughAsr::segment(const CaptionedClip& clip, double max_len) {
  const size_t n = clip.audio.size();
  const size_t max_samples =
      static_cast<size_t>(std::floor(max_len * clip.audio.sample_rate));
  std::vector<Segment> segments;
  std::vector<std::string> words;
  std::vector<size_t> bounds;
  if (clip.meta.transcription && !clip.meta.transcription->empty()) {
    words = split_words(*clip.meta.transcription);
  }
  for (size_t start = 0; start < n; start += max_samples) {
    Segment seg;
    seg.begin_sample = start;
    seg.end_sample = std::min(n, start + max_samples);
    if (!words.empty()) {
      // attribute words whose midpoint falls in this segment
      const size_t n_words = words.size();
      std::vector<std::string> own;
      for (size_t w = 0; w < n_words; ++w) {
        const size_t mid = n * (2 * w + 1) / (2 * n_words);
        if (mid >= seg.begin_sample && mid < seg.end_sample) own.push_back(words[w]);
      }
      if (!own.empty()) seg.transcription = join_words(own, 0, own.size());
    }
    segments.push_back(seg);
  }
  return segments;
}

std::vector<CaptionedClip> segment_long_audio(const CaptionedClip& clip,
                                              SegmentationBackend& backend,
                                              double max_len) {
  validate_clip(clip);
  if (max_len <= 0) throw ArgumentError("max_len must be positive");
  if (clip.meta.duration <= max_len) {
    return {clip};
  }
  const bool has_transcript =
      clip.meta.transcription && !clip.meta.transcription->empty();
  if (!has_transcript && backend.mode() != SegmentationMode::kAsr) {
    throw ArgumentError("clip " + clip.meta.key +
                        " has no ground-truth transcript; backend mode must be asr");
  }

  const auto segments = backend.segment(clip, max_len);
  const size_t n = clip.audio.size();
  const size_t max_samples =
      static_cast<size_t>(std::floor(max_len * clip.audio.sample_rate));
  size_t prev_end = 0;
  for (const auto& seg : segments) {
    if (seg.begin_sample < prev_end || seg.end_sample <= seg.begin_sample ||
        seg.end_sample > n || seg.end_sample - seg.begin_sample > max_samples) {
      throw FormatError("backend returned invalid segment for key " + clip.meta.key);
    }
    prev_end = seg.end_sample;
  }

  std::vector<CaptionedClip> out;
  out.reserve(segments.size());
  const auto& samples = clip.audio.data();
  for (size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    CaptionedClip piece;
    piece.meta = clip.meta;
    piece.meta.key = clip.meta.key + "-seg" + std::to_string(i);
    piece.meta.transcription = seg.transcription;
    std::vector<double> chunk(samples.begin() + static_cast<ptrdiff_t>(seg.begin_sample),
                              samples.begin() + static_cast<ptrdiff_t>(seg.end_sample));
    piece.audio = Waveform(std::move(chunk), clip.audio.sample_rate);
    piece.meta.duration = piece.audio.duration_seconds();
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace duet::corpus
