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

#include "duet/augment/ssim.hpp"

#include "duet/error.hpp"

namespace duet::augment {

double ssim(const Image& x, const Image& y, double dynamic_range) {
  if (x.height != y.height || x.width != y.width) {
    throw ArgumentError("ssim inputs must have the same shape");
  }
  const size_t n = x.pixels.size();
  if (n == 0 || n != y.pixels.size()) throw ArgumentError("ssim inputs must be nonempty");
  if (dynamic_range <= 0) throw ArgumentError("dynamic range must be positive");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += x.pixels[i];
    mean_y += y.pixels[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double var_x = 0.0;
  double var_y = 0.0;
  double cov = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x.pixels[i] - mean_x;
    const double dy = y.pixels[i] - mean_y;
    var_x += dx * dx;
    var_y += dy * dy;
    cov += dx * dy;
  }
  var_x /= static_cast<double>(n);
  var_y /= static_cast<double>(n);
  cov /= static_cast<double>(n);

  const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  return ((2.0 * mean_x * mean_y + c1) * (2.0 * cov + c2)) /
         ((mean_x * mean_x + mean_y * mean_y + c1) * (var_x + var_y + c2));
}

std::vector<std::string> select_keyframes(const FrameSequence& v, double theta,
                                          const ImageCaptioner& captioner, bool invert_gate,
                                          KeyframeReport* report) {
  if (!(theta > 0.0 && theta < 1.0)) throw ArgumentError("theta must be in (0,1)");
  const auto& frames = v.frames;
  if (frames.empty()) throw ArgumentError("frame sequence must be nonempty");
  for (const auto& f : frames) {
    if (f.height != frames[0].height || f.width != frames[0].width) {
      throw ArgumentError("all frames must share a shape");
    }
  }
  std::vector<std::string> captions;
  size_t skipped = 0;
  for (size_t i = 0; i + 1 < frames.size(); ++i) {
    const double s = ssim(frames[i], frames[i + 1], v.dynamic_range);
    const bool selected = invert_gate ? (s < theta) : (s > theta);
    if (!selected) continue;
    try {
      captions.push_back(captioner(frames[i]));
    } catch (const std::exception&) {
      ++skipped;
    }
  }
  if (report) {
    report->captioned = captions.size();
    report->skipped = skipped;
  }
  return captions;
}

}  // namespace duet::augment
