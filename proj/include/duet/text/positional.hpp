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

#ifndef DUET_TEXT_POSITIONAL_HPP_
#define DUET_TEXT_POSITIONAL_HPP_

#include <vector>

namespace duet::text {

// Sin/cos positional table, row-major [max_len x dim]:
//   PE[p, 2i]   = sin(p / 10000^(2i/dim))
//   PE[p, 2i+1] = cos(p / 10000^(2i/dim))
// dim must be even.
std::vector<double> positional_encoding(int max_len, int dim);

}  // namespace duet::text

#endif  // DUET_TEXT_POSITIONAL_HPP_
