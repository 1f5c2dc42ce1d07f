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

#ifndef DUET_CORPUS_TAR_HPP_
#define DUET_CORPUS_TAR_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace duet::corpus {

// Minimal POSIX ustar subset: regular files only, names <= 100 bytes,
// mtime/uid/gid fixed to zero so archives are byte-deterministic.
class TarWriter {
 public:
  explicit TarWriter(const std::string& path);
  ~TarWriter();

  void add_file(const std::string& name, const uint8_t* data, size_t size);
  void add_file(const std::string& name, const std::vector<uint8_t>& data);

  // Writes the two terminating zero blocks. Called by the destructor if
  // not invoked explicitly.
  void finish();

 private:
  std::ofstream out_;
  std::string path_;
  bool finished_ = false;
};

struct TarEntry {
  std::string name;
  std::vector<uint8_t> data;
};

class TarReader {
 public:
  explicit TarReader(const std::string& path);

  // Next regular file, or nullopt at the end-of-archive marker. Throws
  // FormatError on a truncated or corrupt archive.
  std::optional<TarEntry> next();

 private:
  std::ifstream in_;
  std::string path_;
};

}  // namespace duet::corpus

#endif  // DUET_CORPUS_TAR_HPP_
