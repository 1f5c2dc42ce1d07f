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

#include "duet/eval/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "duet/error.hpp"

namespace duet::eval {

std::string to_json_line(const EvalReport& r) {
  if (r.value < 0.0 || r.value > 1.0) {
    throw ArgumentError("metric value out of [0,1]: " + std::to_string(r.value));
  }
  nlohmann::json j;
  j["task"] = r.task;
  j["metric"] = r.metric;
  j["value"] = r.value;
  if (r.k) j["k"] = *r.k;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["template"] = r.template_used;
  for (const auto& [key, value] : r.extra) j[key] = value;
  return j.dump();
}

void write_reports(const std::string& path, const std::vector<EvalReport>& reports,
                   const std::string& config_echo) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open report file: " + path);
  nlohmann::json header;
  header["config"] = config_echo;
  out << header.dump() << "\n";
  for (const auto& r : reports) out << to_json_line(r) << "\n";
  if (!out) throw IoError("report write failed: " + path);
}

std::string format_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "task        metric     k    value     n\n";
  out << "---------------------------------------\n";
  for (const auto& r : reports) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-11s %-10s %-4s %.4f  %d\n", r.task.c_str(),
                  r.metric.c_str(), r.k ? std::to_string(*r.k).c_str() : "-", r.value,
                  r.n_samples);
    out << line;
  }
  return out.str();
}

}  // namespace duet::eval
