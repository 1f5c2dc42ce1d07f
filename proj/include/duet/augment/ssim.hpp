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

#ifndef DUET_AUGMENT_SSIM_HPP_
#define DUET_AUGMENT_SSIM_HPP_

#include <functional>
#include <string>
#include <vector>

namespace duet::augment {

// Grayscale image, values in [0, dynamic range].
struct Image {
  std::vector<double> pixels;
  int height = 0;
  int width = 0;

  double at(int r, int c) const {
    return pixels[static_cast<size_t>(r) * width + static_cast<size_t>(c)];
  }
};

// Ordered video frames, all the same shape.
struct FrameSequence {
  std::vector<Image> frames;
  double dynamic_range = 255.0;
};

// Global (whole-image) structural similarity with C1 = (0.01 L)^2 and
// C2 = (0.03 L)^2. The appendix uses SSIM only as a scalar scene gate, so a
// single window replaces the usual sliding one.
double ssim(const Image& x, const Image& y, double dynamic_range = 255.0);

// Image-to-caption slot. Throws to signal failure on a frame.
using ImageCaptioner = std::function<std::string(const Image&)>;

struct KeyframeReport {
  size_t captioned = 0;
  size_t skipped = 0;
};

// Captions frame i when SSIM(frame_i, frame_{i+1}) > theta, i = 0..n-2, as
// the gate is written; invert_gate flips the comparison to select scene
// changes (low similarity) instead.
std::vector<std::string> select_keyframes(const FrameSequence& v, double theta,
                                          const ImageCaptioner& captioner,
                                          bool invert_gate = false,
                                          KeyframeReport* report = nullptr);

}  // namespace duet::augment

#endif  // DUET_AUGMENT_SSIM_HPP_
