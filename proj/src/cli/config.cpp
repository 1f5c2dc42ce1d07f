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

#include "duet/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "duet/error.hpp"

namespace duet::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::defaults() {
  Config c;
  auto& v = c.values_;
  v["dsp.max_frames"] = "1024";
  v["model.n_latents"] = "16";
  v["model.latent_dim"] = "64";
  v["model.n_cross_layers"] = "2";
  v["model.n_self_layers"] = "2";
  v["model.audio_heads"] = "4";
  v["model.conv_kernel"] = "3";
  v["model.text_dim"] = "64";
  v["model.text_layers"] = "2";
  v["model.text_heads"] = "4";
  v["model.max_len"] = "256";
  v["model.proj_dim"] = "64";
  v["model.dropout"] = "0";
  v["train.batch_size"] = "16";
  v["train.lr"] = "0.0003";
  v["train.beta1"] = "0.9";
  v["train.beta2"] = "0.999";
  v["train.eps"] = "1e-08";
  v["train.weight_decay"] = "0.01";
  v["train.max_epochs"] = "50";
  v["train.max_steps"] = "500";
  v["train.patience"] = "5";
  v["train.grad_clip_norm"] = "1";
  v["train.seed"] = "0";
  v["eval.probe_hidden1"] = "256";
  v["eval.probe_hidden2"] = "128";
  v["eval.probe_dropout"] = "0.2";
  v["eval.probe_lr"] = "0.0001";
  v["eval.probe_epochs"] = "20";
  v["eval.probe_patience"] = "3";
  v["eval.probe_batch_size"] = "8";
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config c = defaults();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    c.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key: " + key);
  if (value.empty()) throw ConfigError("empty value for config key: " + key);
  it->second = value;
}

const std::string& Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key: " + key);
  return it->second;
}

int Config::get_int(const std::string& key) const {
  const std::string& s = get(key);
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an integer: " + s);
  }
}

double Config::get_double(const std::string& key) const {
  const std::string& s = get(key);
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + s);
  }
}

uint64_t Config::get_u64(const std::string& key) const {
  const std::string& s = get(key);
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an unsigned integer: " + s);
  }
}

std::string Config::echo() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) {
    out << key << " = " << value << "\n";
  }
  return out.str();
}

nn::ModelConfig Config::model_config() const {
  nn::ModelConfig m;
  m.audio.n_latents = get_int("model.n_latents");
  m.audio.latent_dim = get_int("model.latent_dim");
  m.audio.n_cross_layers = get_int("model.n_cross_layers");
  m.audio.n_self_layers = get_int("model.n_self_layers");
  m.audio.n_heads = get_int("model.audio_heads");
  m.audio.conv_kernel = get_int("model.conv_kernel");
  m.text.dim = get_int("model.text_dim");
  m.text.n_layers = get_int("model.text_layers");
  m.text.n_heads = get_int("model.text_heads");
  m.text.max_len = get_int("model.max_len");
  m.proj_dim = get_int("model.proj_dim");
  m.dropout = get_double("model.dropout");
  m.validate();
  return m;
}

train::TrainConfig Config::train_config() const {
  train::TrainConfig t;
  t.batch_size = get_int("train.batch_size");
  t.lr = get_double("train.lr");
  t.beta1 = get_double("train.beta1");
  t.beta2 = get_double("train.beta2");
  t.eps = get_double("train.eps");
  t.weight_decay = get_double("train.weight_decay");
  t.max_epochs = get_int("train.max_epochs");
  t.max_steps = get_int("train.max_steps");
  t.patience = get_int("train.patience");
  t.seed = get_u64("train.seed");
  t.grad_clip_norm = get_double("train.grad_clip_norm");
  t.max_frames = get_int("dsp.max_frames");
  t.validate();
  return t;
}

eval::ProbeConfig Config::probe_config() const {
  eval::ProbeConfig p;
  p.hidden1 = get_int("eval.probe_hidden1");
  p.hidden2 = get_int("eval.probe_hidden2");
  p.dropout = get_double("eval.probe_dropout");
  p.lr = get_double("eval.probe_lr");
  p.max_epochs = get_int("eval.probe_epochs");
  p.patience = get_int("eval.probe_patience");
  p.batch_size = get_int("eval.probe_batch_size");
  p.seed = get_u64("train.seed");
  return p;
}

int Config::max_frames() const { return get_int("dsp.max_frames"); }

}  // namespace duet::cli
