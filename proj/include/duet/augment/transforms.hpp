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

#ifndef DUET_AUGMENT_TRANSFORMS_HPP_
#define DUET_AUGMENT_TRANSFORMS_HPP_

#include <map>
#include <string>

#include "duet/corpus/types.hpp"

namespace duet::augment {

enum class TransformKind { kReverb, kClip, kMask, kPitch };

TransformKind transform_kind_from_string(const std::string& s);

// Parameters per kind:
//   reverb: decay in (0,1), delay > 0 samples   (feedback comb filter)
//   clip:   threshold in (0,1]                  (hard clip)
//   mask:   begin/end sample span within bounds (zeroed)
//   pitch:  ratio in [0.5,2]                    (resample, then pad/trim)
// Output always has the input's length and rate.
corpus::Waveform waveform_transform(const corpus::Waveform& w, TransformKind kind,
                                    const std::map<std::string, double>& params);

}  // namespace duet::augment

#endif  // DUET_AUGMENT_TRANSFORMS_HPP_
