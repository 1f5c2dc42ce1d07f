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

#include "duet/corpus/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "duet/error.hpp"

namespace duet::corpus {

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

void put_tag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

uint32_t get_u32(const std::vector<uint8_t>& b, size_t off) {
  return static_cast<uint32_t>(b[off]) | (static_cast<uint32_t>(b[off + 1]) << 8) |
         (static_cast<uint32_t>(b[off + 2]) << 16) | (static_cast<uint32_t>(b[off + 3]) << 24);
}

uint16_t get_u16(const std::vector<uint8_t>& b, size_t off) {
  return static_cast<uint16_t>(b[off] | (b[off + 1] << 8));
}

}  // namespace

int16_t quantize_sample(double x) {
  const double clamped = std::clamp(x, -1.0, 1.0);
  const long q = std::lround(clamped * 32768.0);
  return static_cast<int16_t>(std::clamp<long>(q, -32768, 32767));
}

std::vector<double> quantize_to_grid(const std::vector<double>& samples) {
  std::vector<double> out(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    out[i] = quantize_sample(samples[i]) / 32768.0;
  }
  return out;
}

std::vector<uint8_t> encode_wav(const Waveform& w) {
  const auto& samples = w.data();
  const uint32_t n = static_cast<uint32_t>(samples.size());
  const uint32_t data_bytes = n * 2;
  const uint32_t rate = static_cast<uint32_t>(w.sample_rate);

  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);          // PCM fmt chunk size
  put_u16(out, 1);           // PCM
  put_u16(out, 1);           // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);    // byte rate
  put_u16(out, 2);           // block align
  put_u16(out, 16);          // bits per sample
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : samples) {
    const int16_t q = quantize_sample(s);
    out.push_back(static_cast<uint8_t>(q & 0xff));
    out.push_back(static_cast<uint8_t>((q >> 8) & 0xff));
  }
  return out;
}

Waveform decode_wav(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file");
  }
  size_t off = 12;
  int sample_rate = 0;
  bool have_fmt = false;
  std::vector<double> samples;
  bool have_data = false;
  while (off + 8 <= bytes.size()) {
    char tag[5] = {0};
    std::memcpy(tag, bytes.data() + off, 4);
    const uint32_t size = get_u32(bytes, off + 4);
    const size_t body = off + 8;
    if (body + size > bytes.size()) throw FormatError("truncated WAVE chunk");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("short fmt chunk");
      const uint16_t format = get_u16(bytes, body);
      const uint16_t channels = get_u16(bytes, body + 2);
      sample_rate = static_cast<int>(get_u32(bytes, body + 4));
      const uint16_t bits = get_u16(bytes, body + 14);
      if (format != 1 || channels != 1 || bits != 16) {
        throw FormatError("expected PCM16 mono WAVE");
      }
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (size % 2 != 0) throw FormatError("odd PCM16 data size");
      samples.resize(size / 2);
      for (size_t i = 0; i < samples.size(); ++i) {
        const int16_t q = static_cast<int16_t>(
            static_cast<uint16_t>(bytes[body + 2 * i]) |
            (static_cast<uint16_t>(bytes[body + 2 * i + 1]) << 8));
        samples[i] = q / 32768.0;
      }
      have_data = true;
    }
    off = body + size + (size % 2);  // chunks are word-aligned
  }
  if (!have_fmt || !have_data) throw FormatError("WAVE missing fmt or data chunk");
  return Waveform(std::move(samples), sample_rate);
}

}  // namespace duet::corpus
