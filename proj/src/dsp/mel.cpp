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

#include "duet/dsp/mel.hpp"

#include <algorithm>
#include <cmath>

#include "duet/dsp/fft.hpp"
#include "duet/error.hpp"

namespace duet::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> hann_window(int n) {
  if (n < 2) throw ArgumentError("hann window length must be >= 2");
  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    w[static_cast<size_t>(k)] = 0.5 * (1.0 - std::cos(2.0 * kPi * k / n));
  }
  return w;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank() {
  n_fft_bins_ = kWindowSize / 2 + 1;
  weights_.assign(static_cast<size_t>(kNumMels) * n_fft_bins_, 0.0);
  centers_hz_.resize(kNumMels);

  // kNumMels + 2 mel-spaced points; filter m is the triangle over points
  // [m, m+1, m+2] with its peak at m+1.
  const double mel_lo = hz_to_mel(kFminHz);
  const double mel_hi = hz_to_mel(kFmaxHz);
  std::vector<double> mel_pts(kNumMels + 2);
  for (int i = 0; i < kNumMels + 2; ++i) {
    mel_pts[static_cast<size_t>(i)] =
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (kNumMels + 1);
  }
  const double hz_per_bin = static_cast<double>(kSampleRate) / kWindowSize;
  for (int m = 0; m < kNumMels; ++m) {
    const double left = mel_pts[static_cast<size_t>(m)];
    const double peak = mel_pts[static_cast<size_t>(m) + 1];
    const double right = mel_pts[static_cast<size_t>(m) + 2];
    centers_hz_[static_cast<size_t>(m)] = mel_to_hz(peak);
    for (size_t k = 0; k < n_fft_bins_; ++k) {
      const double mel_k = hz_to_mel(hz_per_bin * static_cast<double>(k));
      double w = 0.0;
      if (mel_k > left && mel_k < peak) {
        w = (mel_k - left) / (peak - left);
      } else if (mel_k == peak) {
        w = 1.0;
      } else if (mel_k > peak && mel_k < right) {
        w = (right - mel_k) / (right - peak);
      }
      weights_[static_cast<size_t>(m) * n_fft_bins_ + k] = w;
    }
  }
}

int MelFilterbank::nearest_center_bin(double hz) const {
  int best = 0;
  double best_dist = std::abs(centers_hz_[0] - hz);
  for (int m = 1; m < kNumMels; ++m) {
    const double d = std::abs(centers_hz_[static_cast<size_t>(m)] - hz);
    if (d < best_dist) {
      best_dist = d;
      best = m;
    }
  }
  return best;
}

std::vector<double> MelFilterbank::apply(const std::vector<double>& power) const {
  if (power.size() != n_fft_bins_) {
    throw ArgumentError("power spectrum has wrong bin count");
  }
  std::vector<double> out(kNumMels, 0.0);
  for (int m = 0; m < kNumMels; ++m) {
    const double* row = &weights_[static_cast<size_t>(m) * n_fft_bins_];
    double acc = 0.0;
    for (size_t k = 0; k < n_fft_bins_; ++k) acc += row[k] * power[k];
    out[static_cast<size_t>(m)] = acc;
  }
  return out;
}

std::vector<std::vector<double>> stft_power(const corpus::Waveform& w) {
  if (w.sample_rate != kSampleRate) {
    throw ArgumentError("log-mel front-end expects 48000 Hz input, got " +
                        std::to_string(w.sample_rate));
  }
  const auto& x = w.data();
  if (x.size() < static_cast<size_t>(kWindowSize)) {
    throw ArgumentError("input shorter than one window (" + std::to_string(x.size()) + " < " +
                        std::to_string(kWindowSize) + " samples)");
  }
  static const std::vector<double> window = hann_window(kWindowSize);
  const int n_frames = 1 + static_cast<int>((x.size() - kWindowSize) / kHopSize);
  std::vector<std::vector<double>> frames;
  frames.reserve(static_cast<size_t>(n_frames));
  std::vector<double> buf(kWindowSize);
  for (int t = 0; t < n_frames; ++t) {
    const size_t start = static_cast<size_t>(t) * kHopSize;
    for (int i = 0; i < kWindowSize; ++i) {
      buf[static_cast<size_t>(i)] = x[start + static_cast<size_t>(i)] * window[static_cast<size_t>(i)];
    }
    frames.push_back(power_spectrum(buf));
  }
  return frames;
}

MelSpectrogram log_mel(const corpus::Waveform& w) {
  static const MelFilterbank fb;
  const auto power = stft_power(w);
  MelSpectrogram spec;
  spec.n_frames = static_cast<int>(power.size());
  spec.frames.resize(power.size() * kNumMels);
  for (size_t t = 0; t < power.size(); ++t) {
    const auto mel = fb.apply(power[t]);
    for (int m = 0; m < kNumMels; ++m) {
      spec.frames[t * kNumMels + static_cast<size_t>(m)] =
          std::log(std::max(kLogFloor, mel[static_cast<size_t>(m)]));
    }
  }
  return spec;
}

namespace {

// Modified Bessel function of the first kind, order zero (series expansion).
double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

corpus::Waveform resample(const corpus::Waveform& w, int target_rate) {
  if (target_rate <= 0) throw ArgumentError("target sample rate must be positive");
  if (w.sample_rate <= 0) throw ArgumentError("source sample rate must be positive");
  if (target_rate == w.sample_rate) return w;

  const auto& x = w.data();
  const double ratio = static_cast<double>(target_rate) / w.sample_rate;
  const size_t out_len = static_cast<size_t>(std::llround(static_cast<double>(x.size()) * ratio));

  // Prototype low-pass: 64 taps at the cutoff, widened by 1/fc when
  // decimating so the stopband sits at the target Nyquist.
  constexpr double kBeta = 8.0;
  constexpr int kTaps = 64;
  const double fc = std::min(1.0, ratio);
  const double half_width = (kTaps / 2) / fc;
  const double i0_beta = bessel_i0(kBeta);

  std::vector<double> y(out_len, 0.0);
  const ptrdiff_t n = static_cast<ptrdiff_t>(x.size());
  for (size_t j = 0; j < out_len; ++j) {
    const double center = static_cast<double>(j) / ratio;
    const ptrdiff_t k_lo =
        std::max<ptrdiff_t>(0, static_cast<ptrdiff_t>(std::ceil(center - half_width)));
    const ptrdiff_t k_hi =
        std::min<ptrdiff_t>(n - 1, static_cast<ptrdiff_t>(std::floor(center + half_width)));
    double acc = 0.0;
    for (ptrdiff_t k = k_lo; k <= k_hi; ++k) {
      const double t = static_cast<double>(k) - center;
      const double u = t / half_width;
      const double window = bessel_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
      acc += x[static_cast<size_t>(k)] * fc * sinc(fc * t) * window;
    }
    y[j] = acc;
  }
  return corpus::Waveform(std::move(y), target_rate);
}

PaddedBatch batch_pad_or_truncate(const std::vector<MelSpectrogram>& specs, RandomStream& rng,
                                  int max_frames) {
  if (specs.empty()) throw ArgumentError("batch must be nonempty");
  if (max_frames < 1) throw ArgumentError("max_frames must be >= 1");

  // Truncation offsets are drawn in batch order so the layout is a pure
  // function of (specs, rng state).
  std::vector<int> offsets(specs.size(), 0);
  std::vector<int> lengths(specs.size());
  int target = 0;
  for (size_t b = 0; b < specs.size(); ++b) {
    int len = specs[b].n_frames;
    if (len > max_frames) {
      offsets[b] = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(len - max_frames + 1)));
      len = max_frames;
    }
    lengths[b] = len;
    target = std::max(target, len);
  }

  PaddedBatch out;
  out.batch = static_cast<int>(specs.size());
  out.n_frames = target;
  const double pad_value = std::log(kLogFloor);
  out.mels.assign(static_cast<size_t>(out.batch) * target * kNumMels, pad_value);
  for (size_t b = 0; b < specs.size(); ++b) {
    const auto& spec = specs[b];
    for (int t = 0; t < lengths[b]; ++t) {
      const size_t src = (static_cast<size_t>(t) + static_cast<size_t>(offsets[b])) * kNumMels;
      const size_t dst = (b * static_cast<size_t>(target) + static_cast<size_t>(t)) * kNumMels;
      std::copy_n(spec.frames.begin() + static_cast<ptrdiff_t>(src), kNumMels,
                  out.mels.begin() + static_cast<ptrdiff_t>(dst));
    }
  }
  return out;
}

}  // namespace duet::dsp
