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

#include "duet/cli/embedding_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "duet/error.hpp"

namespace duet::cli {

namespace {

constexpr char kMagic[4] = {'D', 'E', 'M', 'B'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ofstream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ofstream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

uint32_t get_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw FormatError("truncated embedding file");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw FormatError("truncated embedding file");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_embedding_file(const std::string& path, int dim,
                          const std::vector<EmbeddingRecord>& records) {
  if (dim < 1) throw ArgumentError("embedding dim must be positive");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open embedding file for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(dim));
  put_u64(out, records.size());
  for (const auto& record : records) {
    if (static_cast<int>(record.vec.size()) != dim) {
      throw ArgumentError("embedding row dim mismatch for key " + record.key);
    }
    put_u32(out, static_cast<uint32_t>(record.key.size()));
    out.write(record.key.data(), static_cast<std::streamsize>(record.key.size()));
    for (double v : record.vec) put_u64(out, std::bit_cast<uint64_t>(v));
  }
  out.flush();
  if (!out) throw IoError("embedding file write failed: " + path);
}

std::vector<EmbeddingRecord> read_embedding_file(const std::string& path, int* dim_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file: " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not an embedding file: " + path);
  }
  const uint32_t version = get_u32(in);
  if (version != kVersion) {
    throw FormatError("unsupported embedding file version " + std::to_string(version));
  }
  const uint32_t dim = get_u32(in);
  const uint64_t rows = get_u64(in);
  if (dim_out) *dim_out = static_cast<int>(dim);
  std::vector<EmbeddingRecord> records;
  records.reserve(rows);
  for (uint64_t r = 0; r < rows; ++r) {
    EmbeddingRecord record;
    const uint32_t key_len = get_u32(in);
    record.key.resize(key_len);
    in.read(record.key.data(), key_len);
    if (!in) throw FormatError("truncated embedding key");
    record.vec.resize(dim);
    for (uint32_t i = 0; i < dim; ++i) {
      record.vec[i] = std::bit_cast<double>(get_u64(in));
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace duet::cli
