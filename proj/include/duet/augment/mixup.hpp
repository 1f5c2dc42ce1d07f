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

#ifndef DUET_AUGMENT_MIXUP_HPP_
#define DUET_AUGMENT_MIXUP_HPP_

#include "duet/corpus/types.hpp"
#include "duet/random.hpp"

namespace duet::augment {

constexpr double kMixupLambdaMin = 0.01;
constexpr double kMixupLambdaMax = 0.8;

// a_hat[k] = lambda * a_i[k] + (1 - lambda) * a_j[k]; a_j is looped or
// truncated to len(a_i) first. lambda must be in [0.01, 0.8] and rates must
// match.
corpus::Waveform mixup(const corpus::Waveform& a_i, const corpus::Waveform& a_j, double lambda);

// Uniform draw over the valid lambda range.
double sample_mixup_lambda(RandomStream& rng);

}  // namespace duet::augment

#endif  // DUET_AUGMENT_MIXUP_HPP_
