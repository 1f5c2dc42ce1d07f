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

#include "duet/cli/commands.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "duet/augment/caption.hpp"
#include "duet/augment/mixup.hpp"
#include "duet/augment/multilingual.hpp"
#include "duet/augment/transforms.hpp"
#include "duet/cli/config.hpp"
#include "duet/cli/embedding_file.hpp"
#include "duet/corpus/segmentation.hpp"
#include "duet/corpus/shard.hpp"
#include "duet/corpus/toy.hpp"
#include "duet/dsp/mel.hpp"
#include "duet/error.hpp"
#include "duet/eval/model_embedder.hpp"
#include "duet/eval/probe.hpp"
#include "duet/eval/report.hpp"
#include "duet/eval/zero_shot.hpp"
#include "duet/nn/checkpoint.hpp"
#include "duet/train/loop.hpp"

namespace duet::cli {

namespace fs = std::filesystem;

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t results;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &results);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (size_t i = 0; i < results.gl_pathc; ++i) {
      paths.emplace_back(results.gl_pathv[i]);
    }
  }
  globfree(&results);
  if (rc == GLOB_NOMATCH || paths.empty()) {
    throw IoError("no shards match pattern: " + pattern);
  }
  if (rc != 0 && rc != GLOB_NOMATCH) {
    throw IoError("glob failed for pattern: " + pattern);
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

namespace {

std::vector<corpus::CaptionedClip> read_shards(const std::string& pattern) {
  std::vector<corpus::CaptionedClip> clips;
  for (const auto& path : expand_glob(pattern)) {
    auto part = corpus::read_shard(path);
    clips.insert(clips.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
  }
  return clips;
}

void echo_config(const Config& config, uint64_t seed) {
  nlohmann::json j;
  j["resolved_config"] = config.echo();
  j["seed"] = seed;
  std::cout << j.dump() << "\n";
}

struct LoadedModel {
  nn::Model model;
  Config config;
};

LoadedModel load_model(const std::string& checkpoint_path) {
  auto ckpt = nn::load_checkpoint(checkpoint_path);
  Config config = Config::from_string(ckpt.config_echo);
  return LoadedModel{nn::Model(config.model_config(), std::move(ckpt.params)), config};
}

std::string first_tag(const corpus::ClipMetadata& meta) {
  if (!meta.tags.empty()) return meta.tags.front();
  if (meta.transcription) return *meta.transcription;
  throw ArgumentError("clip " + meta.key + " carries no class tag");
}

std::vector<std::string> sorted_labels(const std::vector<corpus::CaptionedClip>& clips) {
  std::set<std::string> labels;
  for (const auto& clip : clips) labels.insert(first_tag(clip.meta));
  return {labels.begin(), labels.end()};
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string current;
  for (char c : csv) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

std::vector<int> parse_k_list(const std::string& csv) {
  std::vector<int> ks;
  for (const auto& item : split_csv(csv)) {
    const int k = std::stoi(item);
    if (k < 1) throw ArgumentError("k values must be >= 1, got " + item);
    ks.push_back(k);
  }
  if (ks.empty()) throw ArgumentError("empty k list");
  return ks;
}

// --- toy-data ---------------------------------------------------------

int cmd_toy_data(uint64_t seed, int n_per_class, const std::string& out_dir) {
  const auto shards = corpus::write_toy_dataset(seed, n_per_class, out_dir);
  nlohmann::json j;
  j["train"] = shards.train.path;
  j["train_clips"] = shards.train.n_entries;
  j["val"] = shards.val.path;
  j["val_clips"] = shards.val.n_entries;
  j["test"] = shards.test.path;
  j["test_clips"] = shards.test.n_entries;
  std::cout << j.dump() << "\n";
  return 0;
}

// --- prepare ----------------------------------------------------------

int cmd_prepare(const std::string& in_pattern, const std::string& out_dir, double max_len,
                const std::string& mode, int jobs) {
  const auto inputs = expand_glob(in_pattern);
  fs::create_directories(out_dir);
  std::mutex log_mutex;

  auto process = [&](const std::string& in_path) {
    std::unique_ptr<corpus::SegmentationBackend> backend;
    if (mode == "forced_align") {
      backend = std::make_unique<corpus::StubUniformAligner>();
    } else if (mode == "asr") {
      backend = std::make_unique<corpus::StubPassthroughAsr>();
    } else {
      throw ArgumentError("mode must be forced_align or asr");
    }
    std::vector<corpus::CaptionedClip> out_clips;
    size_t skipped = 0;
    corpus::ShardReader reader(in_path);
    while (auto clip = reader.next()) {
      try {
        auto segments = corpus::segment_long_audio(*clip, *backend, max_len);
        for (auto& seg : segments) out_clips.push_back(std::move(seg));
      } catch (const std::exception& e) {
        ++skipped;
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "skipping clip " << clip->meta.key << ": " << e.what() << "\n";
      }
    }
    const auto out_path = (fs::path(out_dir) / fs::path(in_path).filename()).string();
    corpus::write_shard(out_clips, out_path);
    std::lock_guard<std::mutex> lock(log_mutex);
    nlohmann::json j;
    j["shard"] = out_path;
    j["clips"] = out_clips.size();
    j["skipped"] = skipped;
    std::cout << j.dump() << "\n";
  };

  if (jobs <= 1 || inputs.size() <= 1) {
    for (const auto& path : inputs) process(path);
    return 0;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= inputs.size()) break;
          process(inputs[i]);
        }
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return 0;
}

// --- augment ----------------------------------------------------------

struct TransformSpec {
  augment::TransformKind kind;
  std::map<std::string, double> params;
};

std::vector<TransformSpec> parse_transforms(const std::string& spec) {
  std::vector<TransformSpec> out;
  for (const auto& item : split_csv(spec)) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : item) {
      if (c == ':') {
        parts.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    parts.push_back(current);
    if (parts.empty() || parts[0].empty()) throw ArgumentError("bad transform spec: " + item);
    TransformSpec t;
    t.kind = augment::transform_kind_from_string(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos) throw ArgumentError("bad transform parameter: " + parts[i]);
      t.params[parts[i].substr(0, eq)] = std::stod(parts[i].substr(eq + 1));
    }
    out.push_back(std::move(t));
  }
  return out;
}

int cmd_augment(const std::string& in_pattern, const std::string& out_path,
                const std::string& transforms, const std::string& mixup_shard,
                const std::string& lambda_spec, const std::string& caption_template,
                const std::string& langs_csv, const std::string& table_path, uint64_t seed) {
  auto clips = read_shards(in_pattern);
  const auto specs = transforms.empty() ? std::vector<TransformSpec>{} : parse_transforms(transforms);
  RandomStream rng(seed);

  std::vector<corpus::CaptionedClip> noise;
  if (!mixup_shard.empty()) {
    noise = read_shards(mixup_shard);
    if (noise.empty()) throw ArgumentError("mixup shard is empty");
  }

  std::vector<corpus::CaptionedClip> out;
  out.reserve(clips.size());
  for (size_t i = 0; i < clips.size(); ++i) {
    corpus::CaptionedClip clip = clips[i];
    for (const auto& t : specs) {
      clip.audio = augment::waveform_transform(clip.audio, t.kind, t.params);
    }
    if (!noise.empty()) {
      const auto& bg = noise[i % noise.size()];
      const double lambda = lambda_spec == "random" ? augment::sample_mixup_lambda(rng)
                                                    : std::stod(lambda_spec);
      clip.audio = augment::mixup(clip.audio, bg.audio, lambda);
      augment::CaptionSchema schema;
      schema.prefix = caption_template;
      clip.meta.description = augment::compose_caption(
          schema, corpus::training_caption(clips[i].meta), corpus::training_caption(bg.meta),
          clip.meta);
      clip.meta.key += "-mix";
    }
    clip.meta.duration = clip.audio.duration_seconds();
    out.push_back(std::move(clip));
  }

  if (!langs_csv.empty()) {
    const auto langs = split_csv(langs_csv);
    if (table_path.empty()) throw ArgumentError("--langs requires --table");
    const auto backend = augment::LookupTranslationBackend::from_json_file(table_path);
    out = augment::overlay_multilingual(out, langs, backend);
  }

  corpus::write_shard(out, out_path);
  nlohmann::json j;
  j["shard"] = out_path;
  j["clips"] = out.size();
  std::cout << j.dump() << "\n";
  return 0;
}

// --- train ------------------------------------------------------------

int cmd_train(const std::string& config_path, const std::string& train_pattern,
              const std::string& val_pattern, const std::string& out_dir, uint64_t seed,
              const std::vector<std::string>& overrides) {
  Config config = config_path.empty() ? Config::defaults() : Config::from_file(config_path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value: " + kv);
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.set("train.seed", std::to_string(seed));
  echo_config(config, seed);

  const auto train_clips = read_shards(train_pattern);
  const auto val_clips = read_shards(val_pattern);

  nn::Model model(config.model_config(), seed);
  const auto result = train::train(model, train_clips, val_clips, config.train_config());

  fs::create_directories(out_dir);
  const auto ckpt_path = (fs::path(out_dir) / "checkpoint.bin").string();
  nn::save_checkpoint(ckpt_path, result.best_params, config.echo());
  result.log.write_jsonl((fs::path(out_dir) / "runlog.jsonl").string());

  nlohmann::json j;
  j["checkpoint"] = ckpt_path;
  j["best_val_loss"] = result.best_val_loss;
  j["best_epoch"] = result.best_epoch;
  j["steps"] = result.log.steps.size();
  std::cout << j.dump() << "\n";
  return 0;
}

// --- eval -------------------------------------------------------------

void emit_reports(const std::vector<eval::EvalReport>& reports, const std::string& out_path,
                  const Config& config) {
  if (!out_path.empty()) write_reports(out_path, reports, config.echo());
  std::cout << eval::format_table(reports);
  for (const auto& r : reports) std::cout << eval::to_json_line(r) << "\n";
}

int cmd_eval_zs(const std::string& checkpoint, const std::string& shards,
                const std::string& template_pattern, const std::string& task_name,
                const std::string& labels_csv, const std::string& templates_file,
                const std::string& out_path, uint64_t seed) {
  auto loaded = load_model(checkpoint);
  echo_config(loaded.config, seed);
  const auto clips = read_shards(shards);
  if (clips.empty()) throw ArgumentError("no clips to evaluate");

  const eval::Task task = eval::task_from_string(task_name);
  std::vector<std::string> labels =
      labels_csv.empty() ? sorted_labels(clips) : split_csv(labels_csv);
  if (labels.size() < 2) throw ArgumentError("zero-shot needs at least 2 labels");

  std::vector<std::string> patterns;
  if (!templates_file.empty()) {
    std::ifstream in(templates_file);
    if (!in) throw IoError("cannot open templates file: " + templates_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) patterns.push_back(line);
    }
    if (patterns.empty()) throw ArgumentError("templates file is empty");
  } else {
    patterns.push_back(template_pattern.empty() ? eval::default_template(task).pattern
                                                : template_pattern);
  }

  eval::ModelEmbedder embedder(loaded.model, loaded.config.max_frames(), seed);

  // Audio embeddings are shared across the per-template sweep.
  std::vector<eval::Vec> audio_z;
  audio_z.reserve(clips.size());
  for (const auto& clip : clips) audio_z.push_back(embedder.embed_audio(clip));

  std::vector<eval::EvalReport> reports;
  for (const auto& pattern : patterns) {
    eval::PromptTemplate tmpl{task, pattern};
    tmpl.validate();
    const auto prompt_z = eval::embed_prompts(labels, tmpl, embedder);
    int correct = 0;
    for (size_t i = 0; i < clips.size(); ++i) {
      const int predicted = eval::argmax_cosine(audio_z[i], prompt_z);
      if (labels[static_cast<size_t>(predicted)] == first_tag(clips[i].meta)) ++correct;
    }
    eval::EvalReport report;
    report.task = eval::task_to_string(task);
    report.metric = "accuracy";
    report.value = static_cast<double>(correct) / static_cast<double>(clips.size());
    report.n_samples = static_cast<int>(clips.size());
    report.seed = seed;
    report.template_used = pattern;
    reports.push_back(std::move(report));
  }
  emit_reports(reports, out_path, loaded.config);
  return 0;
}

int cmd_eval_retrieval(const std::string& checkpoint, const std::string& shards,
                       const std::string& k_csv, const std::string& map_k_csv,
                       const std::string& out_path, uint64_t seed) {
  auto loaded = load_model(checkpoint);
  echo_config(loaded.config, seed);
  const auto clips = read_shards(shards);
  if (clips.size() < 2) throw ArgumentError("retrieval needs at least 2 clips");
  const auto ks = parse_k_list(k_csv);
  const auto map_ks = parse_k_list(map_k_csv);
  const int max_k = std::max(*std::max_element(ks.begin(), ks.end()),
                             *std::max_element(map_ks.begin(), map_ks.end()));
  if (max_k > static_cast<int>(clips.size())) {
    throw ArgumentError("k exceeds corpus size " + std::to_string(clips.size()));
  }

  eval::ModelEmbedder embedder(loaded.model, loaded.config.max_frames(), seed);
  eval::Mat audio_z, text_z;
  for (const auto& clip : clips) {
    audio_z.push_back(embedder.embed_audio(clip));
    text_z.push_back(embedder.embed_text(corpus::training_caption(clip.meta)));
  }

  const int n = static_cast<int>(clips.size());
  std::vector<int> truth(static_cast<size_t>(n));
  std::vector<std::set<int>> relevance(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    truth[static_cast<size_t>(i)] = i;
    relevance[static_cast<size_t>(i)] = {i};
  }

  std::vector<eval::EvalReport> reports;
  const struct {
    const char* direction;
    const eval::Mat* queries;
    const eval::Mat* corpus;
  } directions[] = {{"audio_to_text", &audio_z, &text_z}, {"text_to_audio", &text_z, &audio_z}};
  for (const auto& dir : directions) {
    std::vector<std::vector<int>> rankings;
    rankings.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      rankings.push_back(eval::retrieve((*dir.queries)[static_cast<size_t>(i)], *dir.corpus, n));
    }
    for (int k : ks) {
      eval::EvalReport report;
      report.task = "retrieval";
      report.metric = "R";
      report.k = k;
      report.value = eval::recall_at_k(rankings, truth, k);
      report.n_samples = n;
      report.seed = seed;
      report.extra["direction"] = dir.direction;
      reports.push_back(std::move(report));
    }
    for (int k : map_ks) {
      eval::EvalReport report;
      report.task = "retrieval";
      report.metric = "mAP";
      report.k = k;
      report.value = eval::map_at_k(rankings, relevance, k);
      report.n_samples = n;
      report.seed = seed;
      report.extra["direction"] = dir.direction;
      reports.push_back(std::move(report));
    }
  }
  emit_reports(reports, out_path, loaded.config);
  return 0;
}

int cmd_eval_lp(const std::string& checkpoint, const std::string& train_pattern,
                const std::string& val_pattern, const std::string& test_pattern,
                const std::string& out_path, uint64_t seed) {
  auto loaded = load_model(checkpoint);
  echo_config(loaded.config, seed);
  const auto train_clips = read_shards(train_pattern);
  const auto val_clips = read_shards(val_pattern);
  const auto test_clips = read_shards(test_pattern);

  const auto labels = sorted_labels(train_clips);
  std::map<std::string, int> label_to_id;
  for (size_t i = 0; i < labels.size(); ++i) label_to_id[labels[i]] = static_cast<int>(i);

  eval::ModelEmbedder embedder(loaded.model, loaded.config.max_frames(), seed);
  auto featurize = [&](const std::vector<corpus::CaptionedClip>& clips, eval::Mat& x,
                       std::vector<int>& y) {
    for (const auto& clip : clips) {
      const auto it = label_to_id.find(first_tag(clip.meta));
      if (it == label_to_id.end()) {
        throw ConfigError("label outside the train split: " + first_tag(clip.meta));
      }
      x.push_back(embedder.embed_audio(clip));
      y.push_back(it->second);
    }
  };
  eval::Mat train_x, val_x, test_x;
  std::vector<int> train_y, val_y, test_y;
  featurize(train_clips, train_x, train_y);
  featurize(val_clips, val_x, val_y);
  featurize(test_clips, test_x, test_y);

  auto probe_cfg = loaded.config.probe_config();
  probe_cfg.seed = seed;
  const auto result = eval::linear_probe(train_x, train_y, val_x, val_y, test_x, test_y,
                                         static_cast<int>(labels.size()), probe_cfg);
  std::vector<eval::EvalReport> reports;
  eval::EvalReport top1;
  top1.task = "linear_probe";
  top1.metric = "accuracy";
  top1.value = result.top1;
  top1.n_samples = static_cast<int>(test_clips.size());
  top1.seed = seed;
  reports.push_back(top1);
  for (const auto& [k, value] : result.recall_at) {
    eval::EvalReport r;
    r.task = "linear_probe";
    r.metric = "R";
    r.k = k;
    r.value = value;
    r.n_samples = static_cast<int>(test_clips.size());
    r.seed = seed;
    reports.push_back(r);
  }
  emit_reports(reports, out_path, loaded.config);
  return 0;
}

int cmd_eval_kws(const std::string& checkpoint, const std::string& shards,
                 const std::string& template_pattern, const std::string& out_path,
                 uint64_t seed) {
  auto loaded = load_model(checkpoint);
  echo_config(loaded.config, seed);
  const auto clips = read_shards(shards);
  if (clips.empty()) throw ArgumentError("no clips to evaluate");

  eval::PromptTemplate tmpl = eval::default_template(eval::Task::kKeyword);
  if (!template_pattern.empty()) tmpl.pattern = template_pattern;
  tmpl.validate();

  eval::ModelEmbedder embedder(loaded.model, loaded.config.max_frames(), seed);
  const auto rows = eval::kws_accuracy(embedder, clips, tmpl);
  std::vector<eval::EvalReport> reports;
  for (const auto& row : rows) {
    eval::EvalReport r;
    r.task = "keyword";
    r.metric = "accuracy";
    r.value = row.accuracy;
    r.n_samples = row.n_samples;
    r.seed = seed;
    r.template_used = tmpl.pattern;
    r.extra["language"] = row.language;
    r.extra["n_words"] = std::to_string(row.n_words);
    reports.push_back(std::move(r));
  }
  emit_reports(reports, out_path, loaded.config);
  return 0;
}

// --- embed ------------------------------------------------------------

int cmd_embed(const std::string& checkpoint, const std::string& shards,
              const std::string& modality, const std::string& out_path, uint64_t seed) {
  if (modality != "audio" && modality != "text") {
    throw ArgumentError("modality must be audio or text");
  }
  auto loaded = load_model(checkpoint);
  echo_config(loaded.config, seed);
  const auto clips = read_shards(shards);
  eval::ModelEmbedder embedder(loaded.model, loaded.config.max_frames(), seed);

  std::vector<EmbeddingRecord> records;
  records.reserve(clips.size());
  for (const auto& clip : clips) {
    EmbeddingRecord record;
    record.key = clip.meta.key;
    record.vec = modality == "audio"
                     ? embedder.embed_audio(clip)
                     : embedder.embed_text(corpus::training_caption(clip.meta));
    records.push_back(std::move(record));
  }
  write_embedding_file(out_path, embedder.dim(), records);
  nlohmann::json j;
  j["file"] = out_path;
  j["rows"] = records.size();
  j["dim"] = embedder.dim();
  std::cout << j.dump() << "\n";
  return 0;
}

// --- dsp inspect ------------------------------------------------------

int cmd_dsp_inspect(const std::string& in_pattern) {
  for (const auto& path : expand_glob(in_pattern)) {
    corpus::ShardReader reader(path);
    while (auto clip = reader.next()) {
      const auto spec = dsp::log_mel(clip->audio);
      std::vector<double> bin_mean(dsp::kNumMels, 0.0);
      std::vector<double> bin_min(dsp::kNumMels, 1e300);
      std::vector<double> bin_max(dsp::kNumMels, -1e300);
      for (int t = 0; t < spec.n_frames; ++t) {
        for (int m = 0; m < dsp::kNumMels; ++m) {
          const double v = spec.at(t, m);
          bin_mean[static_cast<size_t>(m)] += v;
          bin_min[static_cast<size_t>(m)] = std::min(bin_min[static_cast<size_t>(m)], v);
          bin_max[static_cast<size_t>(m)] = std::max(bin_max[static_cast<size_t>(m)], v);
        }
      }
      for (auto& v : bin_mean) v /= spec.n_frames;
      nlohmann::json j;
      j["key"] = clip->meta.key;
      j["frames"] = spec.n_frames;
      j["bins"] = dsp::kNumMels;
      j["bin_mean"] = bin_mean;
      j["bin_min"] = bin_min;
      j["bin_max"] = bin_max;
      std::cout << j.dump() << "\n";
    }
  }
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"dual-encoder audio-text toolkit"};
  app.require_subcommand(1);
  uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for all randomness");

  // toy-data
  auto* toy = app.add_subcommand("toy-data", "generate the deterministic toy corpus");
  int n_per_class = 50;
  std::string toy_out = "toy";
  toy->add_option("--n-per-class", n_per_class, "clips per class (>= 3)");
  toy->add_option("--out", toy_out, "output directory")->required();

  // prepare
  auto* prepare = app.add_subcommand("prepare", "segment long clips into training shards");
  std::string prep_in, prep_out, prep_mode = "forced_align";
  double prep_max_len = corpus::kDefaultMaxSegmentSeconds;
  int prep_jobs = 1;
  prepare->add_option("--in", prep_in, "input shard glob")->required();
  prepare->add_option("--out", prep_out, "output directory")->required();
  prepare->add_option("--max-len", prep_max_len, "segment cap in seconds");
  prepare->add_option("--mode", prep_mode, "forced_align or asr");
  prepare->add_option("--jobs", prep_jobs, "parallel shard workers");

  // augment
  auto* aug = app.add_subcommand("augment", "apply waveform transforms, mixup and overlays");
  std::string aug_in, aug_out, aug_transforms, aug_mixup, aug_lambda = "random";
  std::string aug_caption = "A person saying {}, background {}";
  std::string aug_langs, aug_table;
  aug->add_option("--in", aug_in, "input shard glob")->required();
  aug->add_option("--out", aug_out, "output shard path")->required();
  aug->add_option("--transforms", aug_transforms,
                  "ordered list, e.g. reverb:decay=0.5:delay=2400,clip:threshold=0.8");
  aug->add_option("--mixup-shard", aug_mixup, "background shard for mixup");
  aug->add_option("--lambda", aug_lambda, "mixup lambda in [0.01,0.8] or 'random'");
  aug->add_option("--caption-template", aug_caption, "caption template for mixed clips");
  aug->add_option("--langs", aug_langs, "comma-separated overlay languages");
  aug->add_option("--table", aug_table, "translation table JSON");

  // train
  auto* tr = app.add_subcommand("train", "contrastive pretraining");
  std::string tr_config, tr_train, tr_val, tr_out = "run";
  std::vector<std::string> tr_set;
  tr->add_option("--config", tr_config, "config file");
  tr->add_option("--train", tr_train, "train shard glob")->required();
  tr->add_option("--val", tr_val, "val shard glob")->required();
  tr->add_option("--out", tr_out, "output directory");
  tr->add_option("--set", tr_set, "config overrides key=value");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluation harness");
  ev->require_subcommand(1);
  std::string ev_checkpoint, ev_shards, ev_template, ev_task = "sound", ev_labels;
  std::string ev_templates_file, ev_out, ev_k = "1,5,10", ev_map_k = "1,3,5";
  std::string ev_train, ev_val, ev_test;

  auto* zs = ev->add_subcommand("zs", "zero-shot classification");
  zs->add_option("--checkpoint", ev_checkpoint)->required();
  zs->add_option("--shards", ev_shards)->required();
  zs->add_option("--template", ev_template, "prompt pattern with {label}");
  zs->add_option("--task", ev_task, "age|gender|emotion|sound|language|keyword");
  zs->add_option("--labels", ev_labels, "comma-separated label set");
  zs->add_option("--templates", ev_templates_file, "file of templates for a sensitivity sweep");
  zs->add_option("--out", ev_out, "report path (JSON lines)");

  auto* lp = ev->add_subcommand("lp", "linear probe on frozen embeddings");
  lp->add_option("--checkpoint", ev_checkpoint)->required();
  lp->add_option("--train", ev_train)->required();
  lp->add_option("--val", ev_val)->required();
  lp->add_option("--test", ev_test)->required();
  lp->add_option("--out", ev_out, "report path");

  auto* rt = ev->add_subcommand("retrieval", "audio-text retrieval metrics");
  rt->add_option("--checkpoint", ev_checkpoint)->required();
  rt->add_option("--shards", ev_shards)->required();
  rt->add_option("--k", ev_k, "recall cutoffs");
  rt->add_option("--map-k", ev_map_k, "mAP cutoffs");
  rt->add_option("--out", ev_out, "report path");

  auto* kw = ev->add_subcommand("kws", "multilingual keyword spotting");
  kw->add_option("--checkpoint", ev_checkpoint)->required();
  kw->add_option("--shards", ev_shards)->required();
  kw->add_option("--template", ev_template, "prompt pattern with {label}");
  kw->add_option("--out", ev_out, "report path");

  // embed
  auto* em = app.add_subcommand("embed", "export embeddings to a binary file");
  std::string em_checkpoint, em_shards, em_modality = "audio", em_out;
  em->add_option("--checkpoint", em_checkpoint)->required();
  em->add_option("--shards", em_shards)->required();
  em->add_option("--modality", em_modality, "audio or text");
  em->add_option("--out", em_out)->required();

  // dsp
  auto* dspc = app.add_subcommand("dsp", "front-end utilities");
  dspc->require_subcommand(1);
  auto* inspect = dspc->add_subcommand("inspect", "frame counts and per-bin stats as JSON lines");
  std::string dsp_in;
  inspect->add_option("--in", dsp_in, "shard glob")->required();

  std::vector<const char*> argv;
  argv.push_back("duet");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*toy) return cmd_toy_data(seed, n_per_class, toy_out);
    if (*prepare) return cmd_prepare(prep_in, prep_out, prep_max_len, prep_mode, prep_jobs);
    if (*aug) {
      return cmd_augment(aug_in, aug_out, aug_transforms, aug_mixup, aug_lambda, aug_caption,
                         aug_langs, aug_table, seed);
    }
    if (*tr) return cmd_train(tr_config, tr_train, tr_val, tr_out, seed, tr_set);
    if (*zs) {
      return cmd_eval_zs(ev_checkpoint, ev_shards, ev_template, ev_task, ev_labels,
                         ev_templates_file, ev_out, seed);
    }
    if (*lp) return cmd_eval_lp(ev_checkpoint, ev_train, ev_val, ev_test, ev_out, seed);
    if (*rt) return cmd_eval_retrieval(ev_checkpoint, ev_shards, ev_k, ev_map_k, ev_out, seed);
    if (*kw) return cmd_eval_kws(ev_checkpoint, ev_shards, ev_template, ev_out, seed);
    if (*em) return cmd_embed(em_checkpoint, em_shards, em_modality, em_out, seed);
    if (*inspect) return cmd_dsp_inspect(dsp_in);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const TemplateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace duet::cli
