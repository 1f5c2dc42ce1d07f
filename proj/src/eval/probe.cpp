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

#include "duet/eval/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "duet/error.hpp"
#include "duet/nn/attention.hpp"
#include "duet/nn/tensor.hpp"
#include "duet/random.hpp"
#include "duet/train/optimizer.hpp"

namespace duet::eval {

namespace {

using nn::TensorPtr;

void validate_split(const Mat& x, const std::vector<int>& y, int n_classes, const char* name) {
  if (x.empty() || x.size() != y.size()) {
    throw ConfigError(std::string(name) + " split is empty or misaligned");
  }
  std::set<int> classes(y.begin(), y.end());
  for (int c : classes) {
    if (c < 0 || c >= n_classes) throw ConfigError("label out of range in split");
  }
  if (classes.size() < 2) {
    throw ConfigError(std::string(name) + " split holds a single class");
  }
}

TensorPtr to_tensor(const Mat& x, const std::vector<size_t>& indices) {
  const int d = static_cast<int>(x[0].size());
  std::vector<double> values;
  values.reserve(indices.size() * x[0].size());
  for (size_t i : indices) {
    values.insert(values.end(), x[i].begin(), x[i].end());
  }
  return nn::Tensor::from_values({static_cast<int>(indices.size()), d}, std::move(values));
}

struct ProbeNet {
  nn::ParamMap params;
  int n_classes;

  ProbeNet(int in_dim, const ProbeConfig& cfg, int classes) : n_classes(classes) {
    RandomStream rng(cfg.seed);
    auto lin = [&](const std::string& name, int in, int out, uint64_t stream) {
      RandomStream r = rng.derive(stream);
      const double bound = 1.0 / std::sqrt(static_cast<double>(in));
      auto w = nn::Tensor::zeros({in, out}, true);
      for (auto& v : w->value) v = r.uniform(-bound, bound);
      params.insert(name + ".w", w);
      params.insert(name + ".b", nn::Tensor::zeros({out}, true));
    };
    lin("fc1", in_dim, cfg.hidden1, 1);
    lin("fc2", cfg.hidden1, cfg.hidden2, 2);
    lin("fc3", cfg.hidden2, classes, 3);
  }

  TensorPtr logits(const TensorPtr& x, double drop, RandomStream* rng, bool training) {
    auto h = nn::relu(nn::linear(x, params.at("fc1.w"), params.at("fc1.b")));
    if (training && rng) h = nn::dropout(h, drop, *rng, true);
    h = nn::relu(nn::linear(h, params.at("fc2.w"), params.at("fc2.b")));
    if (training && rng) h = nn::dropout(h, drop, *rng, true);
    return nn::linear(h, params.at("fc3.w"), params.at("fc3.b"));
  }
};

TensorPtr cross_entropy(const TensorPtr& logits, const std::vector<int>& labels) {
  auto log_probs = nn::log_softmax(logits);
  auto picked = nn::pick_columns(log_probs, labels);
  return nn::scale(nn::mean_all(picked), -1.0);
}

double eval_loss(ProbeNet& net, const Mat& x, const std::vector<int>& y) {
  std::vector<size_t> all(x.size());
  std::iota(all.begin(), all.end(), 0u);
  auto logits = net.logits(to_tensor(x, all), 0.0, nullptr, false);
  return cross_entropy(logits, y)->item();
}

}  // namespace

ProbeResult linear_probe(const Mat& train_x, const std::vector<int>& train_y, const Mat& val_x,
                         const std::vector<int>& val_y, const Mat& test_x,
                         const std::vector<int>& test_y, int n_classes, const ProbeConfig& cfg) {
  if (n_classes < 2) throw ConfigError("probe needs >= 2 classes");
  validate_split(train_x, train_y, n_classes, "train");
  validate_split(val_x, val_y, n_classes, "val");
  validate_split(test_x, test_y, n_classes, "test");
  if (cfg.dropout < 0.0 || cfg.dropout >= 1.0) throw ConfigError("probe dropout out of range");

  const int in_dim = static_cast<int>(train_x[0].size());
  ProbeNet net(in_dim, cfg, n_classes);
  train::AdamWConfig opt_cfg;
  opt_cfg.lr = cfg.lr;
  train::AdamWState opt_state;

  RandomStream root(cfg.seed);
  ProbeResult result;
  nn::ParamMap best_params;
  double best_val = 0.0;
  bool has_best = false;
  int bad = 0;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    RandomStream shuffle_rng = root.derive(0x10u).derive(static_cast<uint64_t>(epoch));
    RandomStream drop_rng = root.derive(0x11u).derive(static_cast<uint64_t>(epoch));
    std::vector<size_t> order(train_x.size());
    std::iota(order.begin(), order.end(), 0u);
    shuffle_rng.shuffle(order);

    for (size_t start = 0; start < order.size(); start += static_cast<size_t>(cfg.batch_size)) {
      const size_t end = std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      std::vector<size_t> indices(order.begin() + static_cast<ptrdiff_t>(start),
                                  order.begin() + static_cast<ptrdiff_t>(end));
      std::vector<int> labels;
      labels.reserve(indices.size());
      for (size_t i : indices) labels.push_back(train_y[i]);
      auto logits = net.logits(to_tensor(train_x, indices), cfg.dropout, &drop_rng, true);
      auto loss = cross_entropy(logits, labels);
      nn::backward(loss);
      train::adamw_step(net.params, opt_state, opt_cfg);
    }

    const double val_loss = eval_loss(net, val_x, val_y);
    result.epochs_run = epoch + 1;
    if (!has_best || val_loss < best_val) {
      best_val = val_loss;
      has_best = true;
      bad = 0;
      best_params = nn::ParamMap();
      for (const auto& [name, t] : net.params) {
        best_params.insert(name, nn::Tensor::from_values(t->shape, t->value, true));
      }
    } else if (++bad >= cfg.patience) {
      break;
    }
  }
  net.params = std::move(best_params);
  result.best_val_loss = best_val;

  // Test metrics over class posteriors.
  std::vector<size_t> all(test_x.size());
  std::iota(all.begin(), all.end(), 0u);
  auto probs = nn::softmax(net.logits(to_tensor(test_x, all), 0.0, nullptr, false));
  int correct = 0;
  std::vector<std::vector<int>> rankings(test_x.size());
  for (size_t i = 0; i < test_x.size(); ++i) {
    std::vector<int> order(static_cast<size_t>(n_classes));
    std::iota(order.begin(), order.end(), 0);
    const double* row = probs->value.data() + static_cast<int64_t>(i) * n_classes;
    std::stable_sort(order.begin(), order.end(),
                     [row](int a, int b) { return row[a] > row[b]; });
    rankings[i] = order;
    if (order[0] == test_y[i]) ++correct;
  }
  result.top1 = static_cast<double>(correct) / static_cast<double>(test_x.size());
  for (int k : {1, 3}) {
    result.recall_at[k] = recall_at_k(rankings, test_y, std::min(k, n_classes));
  }
  return result;
}

}  // namespace duet::eval
