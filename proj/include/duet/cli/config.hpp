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

#ifndef DUET_CLI_CONFIG_HPP_
#define DUET_CLI_CONFIG_HPP_

#include <map>
#include <string>

#include "duet/eval/probe.hpp"
#include "duet/nn/encoders.hpp"
#include "duet/train/loop.hpp"

namespace duet::cli {

// Flat `key = value` configuration covering dsp, model, train, and eval
// keys. Unknown keys are rejected; every run echoes its resolved config.
class Config {
 public:
  static Config defaults();

  // Defaults overlaid with the file's lines ('#' comments allowed).
  static Config from_file(const std::string& path);

  // Same grammar, from an in-memory blob (checkpoint config echoes).
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  int get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  uint64_t get_u64(const std::string& key) const;

  // Canonical, sorted "key = value" lines.
  std::string echo() const;

  nn::ModelConfig model_config() const;
  train::TrainConfig train_config() const;
  eval::ProbeConfig probe_config() const;
  int max_frames() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace duet::cli

#endif  // DUET_CLI_CONFIG_HPP_
