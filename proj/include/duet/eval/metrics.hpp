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

#ifndef DUET_EVAL_METRICS_HPP_
#define DUET_EVAL_METRICS_HPP_

#include <set>
#include <vector>

namespace duet::eval {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

// Indices of the top-k cosine similarities against unit-row corpus_z,
// descending score, ties broken by ascending index. Requires k <= rows.
std::vector<int> retrieve(const Vec& query_z, const Mat& corpus_z, int k);

// Fraction of queries whose single ground-truth index appears in the first
// k ranks. rankings[i] holds ranked indices for query i.
double recall_at_k(const std::vector<std::vector<int>>& rankings,
                   const std::vector<int>& ground_truth, int k);

// Mean truncated average precision:
//   AP@k = (sum over relevant hits at rank i <= k of precision@i) / min(|rel|, k)
double map_at_k(const std::vector<std::vector<int>>& rankings,
                const std::vector<std::set<int>>& relevance_sets, int k);

}  // namespace duet::eval

#endif  // DUET_EVAL_METRICS_HPP_
