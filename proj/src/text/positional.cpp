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

#include "duet/text/positional.hpp"

#include <cmath>

#include "duet/error.hpp"

namespace duet::text {

std::vector<double> positional_encoding(int max_len, int dim) {
  if (max_len < 0) throw ArgumentError("max_len must be nonnegative");
  if (dim <= 0 || dim % 2 != 0) {
    throw ArgumentError("positional encoding dim must be even, got " + std::to_string(dim));
  }
  std::vector<double> pe(static_cast<size_t>(max_len) * static_cast<size_t>(dim));
  for (int p = 0; p < max_len; ++p) {
    for (int i = 0; i < dim / 2; ++i) {
      const double rate = std::pow(10000.0, 2.0 * i / dim);
      const double angle = static_cast<double>(p) / rate;
      pe[static_cast<size_t>(p) * dim + 2 * static_cast<size_t>(i)] = std::sin(angle);
      pe[static_cast<size_t>(p) * dim + 2 * static_cast<size_t>(i) + 1] = std::cos(angle);
    }
  }
  return pe;
}

}  // namespace duet::text
