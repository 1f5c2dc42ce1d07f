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

#include "duet/corpus/toy.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "duet/corpus/wav.hpp"
#include "duet/error.hpp"
#include "duet/random.hpp"

namespace duet::corpus {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kClipSamples = kStoredSampleRate;  // 1 s

std::vector<double> render_class(int class_idx, RandomStream& rng) {
  const double phase = rng.uniform(0.0, 2.0 * kPi);
  const double gain = rng.uniform(0.3, 0.9);
  std::vector<double> samples(kClipSamples);
  switch (class_idx) {
    case 0:    // 440 Hz tone
    case 1: {  // 880 Hz tone
      const double freq = class_idx == 0 ? 440.0 : 880.0;
      const double w = 2.0 * kPi * freq / kStoredSampleRate;
      for (int i = 0; i < kClipSamples; ++i) {
        samples[i] = gain * std::sin(w * i + phase);
      }
      break;
    }
    case 2: {  // white noise
      for (int i = 0; i < kClipSamples; ++i) {
        samples[i] = gain * rng.uniform(-1.0, 1.0);
      }
      break;
    }
    case 3: {  // linear chirp 200 -> 4000 Hz
      const double f0 = 200.0;
      const double f1 = 4000.0;
      for (int i = 0; i < kClipSamples; ++i) {
        const double t = static_cast<double>(i) / kStoredSampleRate;
        const double inst_phase = 2.0 * kPi * (f0 * t + 0.5 * (f1 - f0) * t * t);
        samples[i] = gain * std::sin(inst_phase + phase);
      }
      break;
    }
    default:
      throw ArgumentError("unknown toy class");
  }
  return quantize_to_grid(samples);
}

std::string slug(const std::string& label) {
  std::string out;
  for (char c : label) {
    out += (c == ' ') ? '_' : c;
  }
  return out;
}

}  // namespace

ToyDataset generate_toy_dataset(uint64_t seed, int n_per_class) {
  if (n_per_class < 3) throw ArgumentError("n_per_class must be >= 3");
  RandomStream root(seed);
  ToyDataset out;
  for (int cls = 0; cls < static_cast<int>(kToyClassLabels.size()); ++cls) {
    const std::string label = kToyClassLabels[static_cast<size_t>(cls)];
    RandomStream class_rng = root.derive(static_cast<uint64_t>(cls));
    // 80/10/10 per class with every split nonempty
    const int n_val = std::max(1, static_cast<int>(std::llround(0.1 * n_per_class)));
    const int n_test = n_val;
    const int n_train = n_per_class - n_val - n_test;
    for (int i = 0; i < n_per_class; ++i) {
      CaptionedClip clip;
      clip.audio = Waveform(render_class(cls, class_rng), kStoredSampleRate);
      clip.meta.key = "toy-" + slug(label) + "-" + std::to_string(i);
      clip.meta.description = "The sound of " + label;
      clip.meta.language = "en";
      clip.meta.tags = {label};
      clip.meta.sample_rate = kStoredSampleRate;
      clip.meta.duration = clip.audio.duration_seconds();
      if (i < n_train) {
        out.train.push_back(std::move(clip));
      } else if (i < n_train + n_val) {
        out.val.push_back(std::move(clip));
      } else {
        out.test.push_back(std::move(clip));
      }
    }
  }
  return out;
}

ToyShards write_toy_dataset(uint64_t seed, int n_per_class, const std::string& out_dir) {
  const ToyDataset data = generate_toy_dataset(seed, n_per_class);
  std::filesystem::create_directories(out_dir);
  const auto base = std::filesystem::path(out_dir);
  ToyShards shards;
  shards.train = write_shard(data.train, (base / "train.tar").string());
  shards.val = write_shard(data.val, (base / "val.tar").string());
  shards.test = write_shard(data.test, (base / "test.tar").string());
  return shards;
}

}  // namespace duet::corpus
