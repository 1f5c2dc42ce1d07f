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

#include "duet/eval/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "duet/error.hpp"

namespace duet::eval {

std::vector<int> retrieve(const Vec& query_z, const Mat& corpus_z, int k) {
  const int m = static_cast<int>(corpus_z.size());
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (k > m) throw ArgumentError("k exceeds corpus size");
  std::vector<double> scores(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& row = corpus_z[static_cast<size_t>(i)];
    if (row.size() != query_z.size()) throw ArgumentError("corpus/query dims disagree");
    double dot = 0.0;
    for (size_t j = 0; j < row.size(); ++j) dot += row[j] * query_z[j];
    scores[static_cast<size_t>(i)] = dot;
  }
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](int a, int b) {
    return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
  });
  order.resize(static_cast<size_t>(k));
  return order;
}

double recall_at_k(const std::vector<std::vector<int>>& rankings,
                   const std::vector<int>& ground_truth, int k) {
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (rankings.size() != ground_truth.size()) {
    throw ArgumentError("one ground-truth item per query required");
  }
  if (rankings.empty()) throw ArgumentError("no queries");
  int hits = 0;
  for (size_t q = 0; q < rankings.size(); ++q) {
    const auto& ranked = rankings[q];
    const size_t limit = std::min(ranked.size(), static_cast<size_t>(k));
    for (size_t i = 0; i < limit; ++i) {
      if (ranked[i] == ground_truth[q]) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(rankings.size());
}

double map_at_k(const std::vector<std::vector<int>>& rankings,
                const std::vector<std::set<int>>& relevance_sets, int k) {
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (rankings.size() != relevance_sets.size()) {
    throw ArgumentError("one relevance set per query required");
  }
  if (rankings.empty()) throw ArgumentError("no queries");
  double total = 0.0;
  for (size_t q = 0; q < rankings.size(); ++q) {
    const auto& rel = relevance_sets[q];
    if (rel.empty()) throw ArgumentError("empty relevance set for query " + std::to_string(q));
    const auto& ranked = rankings[q];
    const size_t limit = std::min(ranked.size(), static_cast<size_t>(k));
    int hits = 0;
    double ap = 0.0;
    for (size_t i = 0; i < limit; ++i) {
      if (rel.count(ranked[i])) {
        ++hits;
        ap += static_cast<double>(hits) / static_cast<double>(i + 1);
      }
    }
    const double denom = static_cast<double>(std::min<size_t>(rel.size(), static_cast<size_t>(k)));
    total += ap / denom;
  }
  return total / static_cast<double>(rankings.size());
}

}  // namespace duet::eval
