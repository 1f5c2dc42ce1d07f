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

#ifndef DUET_DSP_MEL_HPP_
#define DUET_DSP_MEL_HPP_

#include <cstdint>
#include <vector>

#include "duet/corpus/types.hpp"
#include "duet/random.hpp"

namespace duet::dsp {

// Front-end constants: 48 kHz input, 1024-sample Hann window, hop 512,
// 80 mel bins over 0..8000 Hz, power spectrum, natural log with floor 1e-10.
constexpr int kSampleRate = 48000;
constexpr int kWindowSize = 1024;
constexpr int kHopSize = 512;
constexpr int kNumMels = 80;
constexpr double kFminHz = 0.0;
constexpr double kFmaxHz = 8000.0;
constexpr double kLogFloor = 1e-10;

// Periodic Hann: w[k] = 0.5 * (1 - cos(2*pi*k/n)), k = 0..n-1. n >= 2.
std::vector<double> hann_window(int n);

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters, rows [kNumMels x (kWindowSize/2 + 1)].
class MelFilterbank {
 public:
  MelFilterbank();

  // weight of filter `mel_bin` on FFT bin `fft_bin`
  double weight(int mel_bin, int fft_bin) const {
    return weights_[static_cast<size_t>(mel_bin) * n_fft_bins_ + static_cast<size_t>(fft_bin)];
  }
  int n_fft_bins() const { return static_cast<int>(n_fft_bins_); }
  double center_hz(int mel_bin) const { return centers_hz_[static_cast<size_t>(mel_bin)]; }

  // index of the filter whose center frequency is nearest to hz
  int nearest_center_bin(double hz) const;

  std::vector<double> apply(const std::vector<double>& power) const;

 private:
  size_t n_fft_bins_;
  std::vector<double> weights_;
  std::vector<double> centers_hz_;
};

struct MelSpectrogram {
  // frames[t * kNumMels + m], T = 1 + floor((L - 1024) / 512)
  std::vector<double> frames;
  int n_frames = 0;

  double at(int t, int m) const {
    return frames[static_cast<size_t>(t) * kNumMels + static_cast<size_t>(m)];
  }
};

// One-sided power spectrogram [T x (kWindowSize/2+1)], no center padding:
// frame t covers samples [t*512, t*512 + 1024).
std::vector<std::vector<double>> stft_power(const corpus::Waveform& w);

// Requires w at 48 kHz with length >= 1024.
MelSpectrogram log_mel(const corpus::Waveform& w);

// Band-limited windowed-sinc resampler (Kaiser beta 8, 64 taps).
corpus::Waveform resample(const corpus::Waveform& w, int target_rate);

struct PaddedBatch {
  // mels[b * n_frames * kNumMels + t * kNumMels + m]
  std::vector<double> mels;
  int batch = 0;
  int n_frames = 0;
};

// Pads shorter spectrograms with ln(1e-10) frames at the end; spectrograms
// above max_frames are truncated at a random start offset from rng.
PaddedBatch batch_pad_or_truncate(const std::vector<MelSpectrogram>& specs, RandomStream& rng,
                                  int max_frames = 1024);

}  // namespace duet::dsp

#endif  // DUET_DSP_MEL_HPP_
