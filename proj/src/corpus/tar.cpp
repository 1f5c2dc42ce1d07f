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

#include "duet/corpus/tar.hpp"

#include <array>
#include <cstdio>
#include <cstring>

#include "duet/error.hpp"

namespace duet::corpus {

namespace {

constexpr size_t kBlock = 512;

struct RawHeader {
  char name[100];
  char mode[8];
  char uid[8];
  char gid[8];
  char size[12];
  char mtime[12];
  char chksum[8];
  char typeflag;
  char linkname[100];
  char magic[6];
  char version[2];
  char uname[32];
  char gname[32];
  char devmajor[8];
  char devminor[8];
  char prefix[155];
  char pad[12];
};
static_assert(sizeof(RawHeader) == kBlock, "ustar header must be one block");

void write_octal(char* field, size_t width, uint64_t value) {
  // width includes the trailing NUL
  std::snprintf(field, width, "%0*llo", static_cast<int>(width - 1),
                static_cast<unsigned long long>(value));
}

uint64_t read_octal(const char* field, size_t width) {
  uint64_t v = 0;
  for (size_t i = 0; i < width; ++i) {
    const char c = field[i];
    if (c == '\0' || c == ' ') break;
    if (c < '0' || c > '7') throw FormatError("bad octal field in tar header");
    v = v * 8 + static_cast<uint64_t>(c - '0');
  }
  return v;
}

bool is_zero_block(const uint8_t* block) {
  for (size_t i = 0; i < kBlock; ++i) {
    if (block[i] != 0) return false;
  }
  return true;
}

}  // namespace

TarWriter::TarWriter(const std::string& path) : path_(path) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open for writing: " + path);
}

TarWriter::~TarWriter() {
  if (!finished_ && out_.is_open()) {
    try {
      finish();
    } catch (...) {
      // destructor must not throw
    }
  }
}

void TarWriter::add_file(const std::string& name, const uint8_t* data, size_t size) {
  if (finished_) throw IoError("tar archive already finished: " + path_);
  if (name.empty() || name.size() > 100) {
    throw FormatError("tar member name must be 1..100 bytes: " + name);
  }
  RawHeader h;
  std::memset(&h, 0, sizeof(h));
  std::memcpy(h.name, name.data(), name.size());
  write_octal(h.mode, sizeof(h.mode), 0644);
  write_octal(h.uid, sizeof(h.uid), 0);
  write_octal(h.gid, sizeof(h.gid), 0);
  write_octal(h.size, sizeof(h.size), size);
  write_octal(h.mtime, sizeof(h.mtime), 0);
  h.typeflag = '0';
  std::memcpy(h.magic, "ustar", 6);
  std::memcpy(h.version, "00", 2);

  std::memset(h.chksum, ' ', sizeof(h.chksum));
  uint64_t sum = 0;
  const uint8_t* raw = reinterpret_cast<const uint8_t*>(&h);
  for (size_t i = 0; i < kBlock; ++i) sum += raw[i];
  std::snprintf(h.chksum, 7, "%06llo", static_cast<unsigned long long>(sum));
  h.chksum[6] = '\0';
  h.chksum[7] = ' ';

  out_.write(reinterpret_cast<const char*>(&h), kBlock);
  if (size > 0) out_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  const size_t tail = size % kBlock;
  if (tail != 0) {
    static const std::array<char, kBlock> zeros{};
    out_.write(zeros.data(), static_cast<std::streamsize>(kBlock - tail));
  }
  if (!out_) throw IoError("write failed: " + path_);
}

void TarWriter::add_file(const std::string& name, const std::vector<uint8_t>& data) {
  add_file(name, data.data(), data.size());
}

void TarWriter::finish() {
  if (finished_) return;
  static const std::array<char, 2 * kBlock> zeros{};
  out_.write(zeros.data(), zeros.size());
  out_.flush();
  if (!out_) throw IoError("write failed: " + path_);
  out_.close();
  finished_ = true;
}

TarReader::TarReader(const std::string& path) : path_(path) {
  in_.open(path, std::ios::binary);
  if (!in_) throw IoError("cannot open for reading: " + path);
}

std::optional<TarEntry> TarReader::next() {
  std::array<uint8_t, kBlock> block;
  for (;;) {
    in_.read(reinterpret_cast<char*>(block.data()), kBlock);
    if (in_.gcount() == 0 && in_.eof()) {
      // Missing end-of-archive marker; treat a clean EOF at a block
      // boundary as the end but flag anything else.
      return std::nullopt;
    }
    if (in_.gcount() != static_cast<std::streamsize>(kBlock)) {
      throw FormatError("truncated tar header in " + path_);
    }
    if (is_zero_block(block.data())) return std::nullopt;

    const RawHeader* h = reinterpret_cast<const RawHeader*>(block.data());
    const uint64_t size = read_octal(h->size, sizeof(h->size));
    std::string name(h->name, strnlen(h->name, sizeof(h->name)));

    if (h->typeflag != '0' && h->typeflag != '\0') {
      // skip non-regular members
      const uint64_t padded = (size + kBlock - 1) / kBlock * kBlock;
      in_.seekg(static_cast<std::streamoff>(padded), std::ios::cur);
      continue;
    }

    TarEntry entry;
    entry.name = std::move(name);
    entry.data.resize(size);
    if (size > 0) {
      in_.read(reinterpret_cast<char*>(entry.data.data()), static_cast<std::streamsize>(size));
      if (in_.gcount() != static_cast<std::streamsize>(size)) {
        throw FormatError("truncated tar member " + entry.name + " in " + path_);
      }
      const size_t tail = size % kBlock;
      if (tail != 0) {
        in_.seekg(static_cast<std::streamoff>(kBlock - tail), std::ios::cur);
        if (!in_) throw FormatError("truncated tar padding after " + entry.name);
      }
    }
    return entry;
  }
}

}  // namespace duet::corpus
