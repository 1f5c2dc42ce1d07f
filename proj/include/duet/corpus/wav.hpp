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

#ifndef DUET_CORPUS_WAV_HPP_
#define DUET_CORPUS_WAV_HPP_

#include <cstdint>
#include <vector>

#include "duet/corpus/types.hpp"

namespace duet::corpus {

// RIFF/WAVE, PCM, 16-bit little-endian, mono. encode quantizes doubles in
// [-1, 1] to the int16 grid; decode maps back as q / 32768, so a second
// encode of decoded audio is byte-identical.
std::vector<uint8_t> encode_wav(const Waveform& w);
Waveform decode_wav(const std::vector<uint8_t>& bytes);

int16_t quantize_sample(double x);

// Snaps samples onto the int16 grid so that shard round-trips are lossless.
std::vector<double> quantize_to_grid(const std::vector<double>& samples);

}  // namespace duet::corpus

#endif  // DUET_CORPUS_WAV_HPP_
