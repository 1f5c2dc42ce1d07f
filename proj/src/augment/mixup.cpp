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

#include "duet/augment/mixup.hpp"

#include <string>

#include "duet/error.hpp"

namespace duet::augment {

corpus::Waveform mixup(const corpus::Waveform& a_i, const corpus::Waveform& a_j, double lambda) {
  if (lambda < kMixupLambdaMin || lambda > kMixupLambdaMax) {
    throw ArgumentError("mixup lambda must be in [0.01, 0.8], got " + std::to_string(lambda));
  }
  if (a_i.sample_rate != a_j.sample_rate) {
    throw ArgumentError("mixup requires equal sample rates");
  }
  const auto& xi = a_i.data();
  const auto& xj = a_j.data();
  if (xi.empty() || xj.empty()) throw ArgumentError("mixup inputs must be nonempty");

  std::vector<double> out(xi.size());
  for (size_t k = 0; k < xi.size(); ++k) {
    out[k] = lambda * xi[k] + (1.0 - lambda) * xj[k % xj.size()];
  }
  return corpus::Waveform(std::move(out), a_i.sample_rate);
}

double sample_mixup_lambda(RandomStream& rng) {
  return rng.uniform(kMixupLambdaMin, kMixupLambdaMax);
}

}  // namespace duet::augment
