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

#include "duet/augment/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "duet/dsp/mel.hpp"
#include "duet/error.hpp"

namespace duet::augment {

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw ArgumentError("missing transform parameter: " + name);
  return it->second;
}

corpus::Waveform apply_reverb(const corpus::Waveform& w, double decay, double delay) {
  if (!(decay > 0.0 && decay < 1.0)) throw ArgumentError("reverb decay must be in (0,1)");
  const auto delay_samples = static_cast<ptrdiff_t>(delay);
  if (delay <= 0.0 || delay_samples <= 0) throw ArgumentError("reverb delay must be > 0 samples");
  const auto& x = w.data();
  std::vector<double> y(x.size());
  // y[n] = x[n] + decay * y[n - D]: unit impulse response has taps decay^k
  // at k * D
  for (size_t n = 0; n < x.size(); ++n) {
    double v = x[n];
    if (static_cast<ptrdiff_t>(n) >= delay_samples) {
      v += decay * y[n - static_cast<size_t>(delay_samples)];
    }
    y[n] = v;
  }
  return corpus::Waveform(std::move(y), w.sample_rate);
}

corpus::Waveform apply_clip(const corpus::Waveform& w, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ArgumentError("clip threshold must be in (0,1]");
  }
  const auto& x = w.data();
  std::vector<double> y(x.size());
  for (size_t n = 0; n < x.size(); ++n) {
    y[n] = std::clamp(x[n], -threshold, threshold);
  }
  return corpus::Waveform(std::move(y), w.sample_rate);
}

corpus::Waveform apply_mask(const corpus::Waveform& w, double begin, double end) {
  const auto& x = w.data();
  const auto b = static_cast<ptrdiff_t>(begin);
  const auto e = static_cast<ptrdiff_t>(end);
  if (b < 0 || e < b || e > static_cast<ptrdiff_t>(x.size())) {
    throw ArgumentError("mask span out of bounds");
  }
  std::vector<double> y(x);
  std::fill(y.begin() + b, y.begin() + e, 0.0);
  return corpus::Waveform(std::move(y), w.sample_rate);
}

corpus::Waveform apply_pitch(const corpus::Waveform& w, double ratio) {
  if (ratio < 0.5 || ratio > 2.0) throw ArgumentError("pitch ratio must be in [0.5,2]");
  const size_t n = w.size();
  if (ratio == 1.0) return w;
  // Resampling to rate/ratio and replaying at the original rate scales all
  // frequencies by `ratio`; length is then fixed up by trim or zero padding.
  const int shifted_rate = static_cast<int>(std::llround(w.sample_rate / ratio));
  corpus::Waveform shifted = dsp::resample(w, shifted_rate);
  std::vector<double> y(shifted.data());
  y.resize(n, 0.0);
  return corpus::Waveform(std::move(y), w.sample_rate);
}

}  // namespace

TransformKind transform_kind_from_string(const std::string& s) {
  if (s == "reverb") return TransformKind::kReverb;
  if (s == "clip") return TransformKind::kClip;
  if (s == "mask") return TransformKind::kMask;
  if (s == "pitch") return TransformKind::kPitch;
  throw ArgumentError("unknown transform kind: " + s);
}

corpus::Waveform waveform_transform(const corpus::Waveform& w, TransformKind kind,
                                    const std::map<std::string, double>& params) {
  if (w.size() == 0) throw ArgumentError("transform input must be nonempty");
  switch (kind) {
    case TransformKind::kReverb:
      return apply_reverb(w, require_param(params, "decay"), require_param(params, "delay"));
    case TransformKind::kClip:
      return apply_clip(w, require_param(params, "threshold"));
    case TransformKind::kMask:
      return apply_mask(w, require_param(params, "begin"), require_param(params, "end"));
    case TransformKind::kPitch:
      return apply_pitch(w, require_param(params, "ratio"));
  }
  throw ArgumentError("unknown transform kind");
}

}  // namespace duet::augment
