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

#ifndef DUET_CLI_EMBEDDING_FILE_HPP_
#define DUET_CLI_EMBEDDING_FILE_HPP_

#include <string>
#include <vector>

namespace duet::cli {

struct EmbeddingRecord {
  std::string key;
  std::vector<double> vec;
};

// Binary layout: magic "DEMB", u32 version, u32 dim, u64 row count, then
// per row (u32 key length, key UTF-8, dim x f64 LE).
void write_embedding_file(const std::string& path, int dim,
                          const std::vector<EmbeddingRecord>& records);

std::vector<EmbeddingRecord> read_embedding_file(const std::string& path, int* dim_out = nullptr);

}  // namespace duet::cli

#endif  // DUET_CLI_EMBEDDING_FILE_HPP_
