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

#ifndef DUET_NN_CHECKPOINT_HPP_
#define DUET_NN_CHECKPOINT_HPP_

#include <string>

#include "duet/nn/tensor.hpp"

namespace duet::nn {

// Versioned binary container: magic, version, config echo, then per tensor
// (name, shape, little-endian 64-bit values), ordered by name.
void save_checkpoint(const std::string& path, const ParamMap& params,
                     const std::string& config_echo);

struct Checkpoint {
  ParamMap params;
  std::string config_echo;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace duet::nn

#endif  // DUET_NN_CHECKPOINT_HPP_
