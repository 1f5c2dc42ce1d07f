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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "duet/error.hpp"
#include "duet/eval/metrics.hpp"
#include "duet/eval/probe.hpp"
#include "duet/eval/templates.hpp"
#include "duet/eval/zero_shot.hpp"
#include "duet/random.hpp"

using namespace duet;
using namespace duet::eval;

namespace {

Vec normalized(Vec v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  const double n = std::sqrt(sq);
  for (double& x : v) x /= n;
  return v;
}

Vec random_unit(RandomStream& rng, int d) {
  Vec v(static_cast<size_t>(d));
  for (double& x : v) x = rng.normal();
  return normalized(std::move(v));
}

// Exhaustive-sort oracle for retrieve(): full stable argsort by score.
std::vector<int> brute_force_ranking(const Vec& query, const Mat& corpus) {
  std::vector<double> scores(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    double dot = 0.0;
    for (size_t j = 0; j < query.size(); ++j) dot += query[j] * corpus[i][j];
    scores[i] = dot;
  }
  std::vector<int> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](int a, int b) {
    return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
  });
  return order;
}

// Test double: a fixed dictionary embedder with one unit axis per entry.
class FakeEmbedder : public Embedder {
 public:
  FakeEmbedder(int dim, std::map<std::string, int> text_axis)
      : dim_(dim), text_axis_(std::move(text_axis)) {}

  Vec embed_audio(const corpus::CaptionedClip& clip) override {
    return axis(audio_axis_.at(clip.meta.key));
  }
  Vec embed_text(const std::string& text) override {
    const auto it = text_axis_.find(text);
    return axis(it == text_axis_.end() ? dim_ - 1 : it->second);
  }
  int dim() const override { return dim_; }

  void set_audio_axis(const std::string& key, int ax) { audio_axis_[key] = ax; }

 private:
  Vec axis(int i) const {
    Vec v(static_cast<size_t>(dim_), 0.0);
    v[static_cast<size_t>(i)] = 1.0;
    return v;
  }
  int dim_;
  std::map<std::string, int> text_axis_;
  std::map<std::string, int> audio_axis_;
};

class RandomEmbedder : public Embedder {
 public:
  explicit RandomEmbedder(int dim, uint64_t seed) : dim_(dim), rng_(seed) {}
  Vec embed_audio(const corpus::CaptionedClip&) override { return random_unit(rng_, dim_); }
  Vec embed_text(const std::string& text) override {
    // stable per prompt so the label bank is consistent
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
      h ^= c;
      h *= 1099511628211ull;
    }
    RandomStream r(h);
    return random_unit(r, dim_);
  }
  int dim() const override { return dim_; }

 private:
  int dim_;
  RandomStream rng_;
};

corpus::CaptionedClip word_clip(const std::string& key, const std::string& word,
                                const std::string& lang) {
  corpus::CaptionedClip clip;
  clip.meta.key = key;
  clip.meta.language = lang;
  clip.meta.tags = {word};
  clip.meta.sample_rate = 48000;
  clip.meta.duration = 0.1;
  clip.audio = corpus::Waveform(std::vector<double>(4800, 0.1), 48000);
  return clip;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("build_prompt matches the published task templates") {
  CHECK(build_prompt(default_template(Task::kSound), "dog") == "The sound of dog");
  CHECK(build_prompt(default_template(Task::kEmotion), "happy") ==
        "A person talking in a happy voice");
  CHECK(build_prompt(default_template(Task::kLanguage), "French") == "French speaker");
  CHECK(build_prompt(default_template(Task::kAge), "25") == "A 25 year old");
  CHECK(build_prompt(default_template(Task::kGender), "female") == "A female");
}

TEST_CASE("prompt template validation") {
  PromptTemplate two{Task::kSound, "{label} and {label}"};
  CHECK_THROWS_AS(two.validate(), ArgumentError);
  PromptTemplate none{Task::kSound, "no slot"};
  CHECK_THROWS_AS(none.validate(), ArgumentError);
  CHECK_THROWS_AS(build_prompt(default_template(Task::kSound), ""), ArgumentError);
}

TEST_CASE("zero-shot: matching prompt embedding wins with score 1") {
  FakeEmbedder model(4, {{"The sound of dog", 0}, {"The sound of cat", 1}});
  const Vec audio = {1.0, 0.0, 0.0, 0.0};
  const auto result =
      zero_shot_classify(audio, {"dog", "cat"}, default_template(Task::kSound), model);
  CHECK(result.label == "dog");
  CHECK(result.scores[0] == doctest::Approx(1.0));
  CHECK(result.scores[1] == doctest::Approx(0.0));
}

TEST_CASE("zero-shot: argmax invariant to positive pre-normalization rescaling") {
  RandomStream rng(70);
  Mat prompts;
  for (int i = 0; i < 4; ++i) prompts.push_back(random_unit(rng, 8));
  const Vec raw = random_unit(rng, 8);
  const int base = argmax_cosine(raw, prompts);
  for (double scale : {0.001, 3.0, 1000.0}) {
    Vec scaled = raw;
    for (double& v : scaled) v *= scale;
    CHECK(argmax_cosine(normalized(scaled), prompts) == base);
  }
}

TEST_CASE("zero-shot: ties break to the lowest label index") {
  Mat prompts = {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  CHECK(argmax_cosine({1.0, 0.0}, prompts) == 0);
}

TEST_CASE("zero-shot rejects tiny or duplicated label sets") {
  FakeEmbedder model(4, {});
  const Vec audio = {1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(
      zero_shot_classify(audio, {"one"}, default_template(Task::kSound), model),
      ArgumentError);
  CHECK_THROWS_AS(
      zero_shot_classify(audio, {"a", "a"}, default_template(Task::kSound), model),
      ArgumentError);
}

TEST_CASE("retrieve: a corpus containing the query ranks it first") {
  RandomStream rng(71);
  Mat corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back(random_unit(rng, 6));
  const auto ranked = retrieve(corpus[3], corpus, 5);
  CHECK(ranked[0] == 3);
}

TEST_CASE("retrieve: k = M returns a permutation") {
  RandomStream rng(72);
  Mat corpus;
  for (int i = 0; i < 7; ++i) corpus.push_back(random_unit(rng, 4));
  auto ranked = retrieve(random_unit(rng, 4), corpus, 7);
  std::sort(ranked.begin(), ranked.end());
  for (int i = 0; i < 7; ++i) CHECK(ranked[static_cast<size_t>(i)] == i);
  CHECK_THROWS_AS(retrieve(corpus[0], corpus, 8), ArgumentError);
  CHECK_THROWS_AS(retrieve(corpus[0], corpus, 0), ArgumentError);
}

TEST_CASE("retrieve matches the exhaustive-sort oracle on random queries") {
  RandomStream rng(73);
  Mat corpus;
  for (int i = 0; i < 50; ++i) corpus.push_back(random_unit(rng, 8));
  for (int q = 0; q < 100; ++q) {
    const Vec query = random_unit(rng, 8);
    const auto oracle = brute_force_ranking(query, corpus);
    const auto got = retrieve(query, corpus, 50);
    CHECK(got == oracle);
  }
}

TEST_CASE("recall@k: worked example and properties") {
  // true ranks [1, 2, 1] -> R@1 = 2/3
  const std::vector<std::vector<int>> rankings = {{0, 5, 6}, {4, 1, 9}, {2, 7, 8}};
  const std::vector<int> truth = {0, 1, 2};
  CHECK(recall_at_k(rankings, truth, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(recall_at_k(rankings, truth, 2) == doctest::Approx(1.0).epsilon(1e-12));
  // k >= corpus size -> 1.0 and monotone in k
  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double r = recall_at_k(rankings, truth, k);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK_THROWS_AS(recall_at_k(rankings, truth, 0), ArgumentError);
}

TEST_CASE("mAP@k: worked example, R@1 coincidence, monotone") {
  // relevant ranks {1}, {3}, {2}, k=3 -> (1 + 1/3 + 1/2)/3
  const std::vector<std::vector<int>> rankings = {{0, 4, 5}, {4, 5, 1}, {4, 2, 5}};
  const std::vector<std::set<int>> rel = {{0}, {1}, {2}};
  CHECK(map_at_k(rankings, rel, 3) == doctest::Approx(11.0 / 18.0).epsilon(1e-12));

  // single relevant item: mAP@1 equals R@1 on the same data
  const std::vector<int> truth = {0, 1, 2};
  CHECK(map_at_k(rankings, rel, 1) ==
        doctest::Approx(recall_at_k(rankings, truth, 1)).epsilon(1e-12));

  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double m = map_at_k(rankings, rel, k);
    CHECK(m >= prev - 1e-12);
    prev = m;
  }
  CHECK_THROWS_AS(map_at_k(rankings, {{0}, {}, {2}}, 1), ArgumentError);
}

TEST_CASE("linear probe: separable synthetic features reach accuracy 1.0") {
  RandomStream rng(74);
  const int n_classes = 4;
  const int dim = 8;
  auto make_split = [&](int per_class, Mat& x, std::vector<int>& y) {
    for (int c = 0; c < n_classes; ++c) {
      for (int i = 0; i < per_class; ++i) {
        Vec v(static_cast<size_t>(dim), 0.0);
        v[static_cast<size_t>(c)] = 2.0;  // wide margins
        for (double& e : v) e += 0.05 * rng.normal();
        x.push_back(normalized(std::move(v)));
        y.push_back(c);
      }
    }
  };
  Mat train_x, val_x, test_x;
  std::vector<int> train_y, val_y, test_y;
  make_split(40, train_x, train_y);
  make_split(8, val_x, val_y);
  make_split(8, test_x, test_y);

  ProbeConfig cfg;
  cfg.seed = 74;
  const auto result = linear_probe(train_x, train_y, val_x, val_y, test_x, test_y, n_classes, cfg);
  CHECK(result.top1 == doctest::Approx(1.0));
  CHECK(result.recall_at.at(1) == doctest::Approx(1.0));
  CHECK(result.recall_at.at(3) == doctest::Approx(1.0));
}

TEST_CASE("linear probe: shuffled labels land near chance") {
  RandomStream rng(75);
  const int n_classes = 4;
  const int dim = 8;
  auto random_split = [&](int n, Mat& x, std::vector<int>& y) {
    for (int i = 0; i < n; ++i) {
      x.push_back(random_unit(rng, dim));
      y.push_back(i % n_classes);  // labels uncorrelated with features
    }
  };
  Mat train_x, val_x, test_x;
  std::vector<int> train_y, val_y, test_y;
  random_split(160, train_x, train_y);
  random_split(40, val_x, val_y);
  random_split(200, test_x, test_y);

  ProbeConfig cfg;
  cfg.seed = 75;
  const auto result = linear_probe(train_x, train_y, val_x, val_y, test_x, test_y, n_classes, cfg);
  CHECK(result.top1 >= 0.25 - 0.10);
  CHECK(result.top1 <= 0.25 + 0.10);
}

TEST_CASE("linear probe: single-class split is a config error") {
  Mat x = {{1.0, 0.0}, {0.9, 0.1}};
  std::vector<int> y = {0, 0};
  ProbeConfig cfg;
  CHECK_THROWS_AS(linear_probe(x, y, x, y, x, y, 2, cfg), ConfigError);
}

TEST_CASE("kws: oracle embedder scores 1.0 per language") {
  FakeEmbedder model(6, {{"yes", 0}, {"no", 1}, {"oui", 2}, {"non", 3}});
  std::vector<corpus::CaptionedClip> clips;
  clips.push_back(word_clip("en-0", "yes", "en"));
  clips.push_back(word_clip("en-1", "no", "en"));
  clips.push_back(word_clip("fr-0", "oui", "fr"));
  clips.push_back(word_clip("fr-1", "non", "fr"));
  model.set_audio_axis("en-0", 0);
  model.set_audio_axis("en-1", 1);
  model.set_audio_axis("fr-0", 2);
  model.set_audio_axis("fr-1", 3);

  const auto reports = kws_accuracy(model, clips);
  REQUIRE(reports.size() == 2);  // one row per language
  for (const auto& r : reports) {
    CHECK(r.accuracy == doctest::Approx(1.0));
    CHECK(r.n_samples == 2);
    CHECK(r.n_words == 2);
  }
  CHECK(reports[0].language == "en");
  CHECK(reports[1].language == "fr");
}

TEST_CASE("kws: random embeddings land near 1/W") {
  const int n_words = 4;
  RandomEmbedder model(16, 76);
  std::vector<corpus::CaptionedClip> clips;
  const std::vector<std::string> words = {"alpha", "beta", "gamma", "delta"};
  for (int i = 0; i < 200; ++i) {
    clips.push_back(word_clip("k" + std::to_string(i), words[static_cast<size_t>(i % n_words)], "xx"));
  }
  const auto reports = kws_accuracy(model, clips);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].accuracy >= 1.0 / n_words - 0.12);
  CHECK(reports[0].accuracy <= 1.0 / n_words + 0.12);
}

TEST_CASE("kws: fewer than two distinct words is an error") {
  FakeEmbedder model(4, {});
  std::vector<corpus::CaptionedClip> clips = {word_clip("a", "solo", "en"),
                                              word_clip("b", "solo", "en")};
  CHECK_THROWS_AS(kws_accuracy(model, clips), ArgumentError);
}

}  // TEST_SUITE
