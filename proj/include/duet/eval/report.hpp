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

#ifndef DUET_EVAL_REPORT_HPP_
#define DUET_EVAL_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace duet::eval {

struct EvalReport {
  std::string task;
  std::string metric;
  double value = 0.0;  // in [0, 1]
  std::optional<int> k;
  int n_samples = 0;
  uint64_t seed = 0;
  std::string template_used;
  std::map<std::string, std::string> extra;
};

std::string to_json_line(const EvalReport& r);

// JSON lines; the resolved config is echoed as the first line.
void write_reports(const std::string& path, const std::vector<EvalReport>& reports,
                   const std::string& config_echo);

// Human-readable fixed-width table.
std::string format_table(const std::vector<EvalReport>& reports);

}  // namespace duet::eval

#endif  // DUET_EVAL_REPORT_HPP_
