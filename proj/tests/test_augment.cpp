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

#include <cmath>

#include <doctest.h>

#include "duet/augment/caption.hpp"
#include "duet/augment/mixup.hpp"
#include "duet/augment/multilingual.hpp"
#include "duet/augment/ssim.hpp"
#include "duet/augment/transforms.hpp"
#include "duet/error.hpp"
#include "duet/random.hpp"
#include "support/tmpdir.hpp"

using namespace duet;
using namespace duet::augment;
using corpus::CaptionedClip;
using corpus::ClipMetadata;
using corpus::Waveform;

namespace {

Waveform wave(std::vector<double> samples, int rate = 48000) {
  return Waveform(std::move(samples), rate);
}

Image constant_image(int h, int w, double value) {
  Image img;
  img.height = h;
  img.width = w;
  img.pixels.assign(static_cast<size_t>(h) * w, value);
  return img;
}

}  // namespace

TEST_SUITE("augment") {

TEST_CASE("mixup: linear combination example") {
  const auto out = mixup(wave({1.0, -1.0}), wave({0.5, 0.5}), 0.8);
  REQUIRE(out.size() == 2);
  CHECK(out.data()[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(out.data()[1] == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("mixup: zero background gives exactly lambda * a_i") {
  const auto a = wave({0.25, -0.5, 0.75});
  const auto out = mixup(a, wave({0.0, 0.0, 0.0}), 0.3);
  for (size_t i = 0; i < out.size(); ++i) {
    CHECK(out.data()[i] == 0.3 * a.data()[i]);
  }
}

TEST_CASE("mixup: background loops or truncates to len(a_i)") {
  const auto looped = mixup(wave({0.0, 0.0, 0.0, 0.0}), wave({0.4, -0.4}), 0.5);
  REQUIRE(looped.size() == 4);
  CHECK(looped.data()[0] == doctest::Approx(0.2));
  CHECK(looped.data()[1] == doctest::Approx(-0.2));
  CHECK(looped.data()[2] == doctest::Approx(0.2));
  CHECK(looped.data()[3] == doctest::Approx(-0.2));
  const auto truncated = mixup(wave({0.0}), wave({0.4, -0.4, 0.1}), 0.5);
  CHECK(truncated.size() == 1);
}

TEST_CASE("mixup: lambda range and rate mismatch are argument errors") {
  CHECK_THROWS_AS(mixup(wave({0.1}), wave({0.1}), 0.009), ArgumentError);
  CHECK_THROWS_AS(mixup(wave({0.1}), wave({0.1}), 0.81), ArgumentError);
  CHECK_THROWS_AS(mixup(wave({0.1}, 48000), wave({0.1}, 16000), 0.5), ArgumentError);
}

TEST_CASE("mixup: amplitude bound over random pairs") {
  RandomStream rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(64), b(64);
    for (auto& v : a) v = rng.uniform(-1.0, 1.0);
    for (auto& v : b) v = rng.uniform(-1.0, 1.0);
    const double lambda = sample_mixup_lambda(rng);
    const auto out = mixup(wave(a), wave(b), lambda);
    double max_a = 0.0, max_b = 0.0, max_out = 0.0;
    for (double v : a) max_a = std::max(max_a, std::abs(v));
    for (double v : b) max_b = std::max(max_b, std::abs(v));
    for (double v : out.data()) max_out = std::max(max_out, std::abs(v));
    CHECK(max_out <= lambda * max_a + (1.0 - lambda) * max_b + 1e-12);
  }
}

TEST_CASE("mixup: linearity mixup(a,b,l) + mixup(b,a,l) = a + b") {
  RandomStream rng(6);
  std::vector<double> a(32), b(32);
  for (auto& v : a) v = rng.uniform(-1.0, 1.0);
  for (auto& v : b) v = rng.uniform(-1.0, 1.0);
  const double lambda = 0.37;
  const auto ab = mixup(wave(a), wave(b), lambda);
  const auto ba = mixup(wave(b), wave(a), lambda);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(ab.data()[i] + ba.data()[i] == doctest::Approx(a[i] + b[i]).epsilon(1e-12));
  }
}

TEST_CASE("compose_caption: positional template with both inputs") {
  CaptionSchema schema;
  schema.prefix = "A person saying {}, background {}";
  ClipMetadata meta;
  const auto out = compose_caption(schema, "It's raining outside", "wind noise", meta);
  CHECK(out == "A person saying It's raining outside, background wind noise");
}

TEST_CASE("compose_caption: empty t_j drops the background clause") {
  CaptionSchema schema;
  schema.prefix = "A person saying {}, background {}";
  ClipMetadata meta;
  const auto out = compose_caption(schema, "It's raining outside", "", meta);
  CHECK(out == "A person saying It's raining outside");
}

TEST_CASE("compose_caption: metadata-driven template") {
  CaptionSchema schema;
  schema.prefix = "A {gender} saying {transcription} in a {emotion} voice";
  ClipMetadata meta;
  meta.gender = corpus::Gender::kFemale;
  meta.transcription = "hello";
  meta.emotion = "happy";
  CHECK(compose_caption(schema, "", "", meta) == "A female saying hello in a happy voice");
}

TEST_CASE("compose_caption: unresolved slot errors with the slot name") {
  CaptionSchema schema;
  schema.prefix = "A {speaker_height} person";
  ClipMetadata meta;
  try {
    compose_caption(schema, "", "", meta);
    FAIL("expected TemplateError");
  } catch (const TemplateError& e) {
    CHECK(std::string(e.what()).find("speaker_height") != std::string::npos);
  }
}

TEST_CASE("compose_caption: slot_map renames slots") {
  CaptionSchema schema;
  schema.prefix = "The sound of {noise}";
  schema.slot_map["noise"] = "tag";
  ClipMetadata meta;
  meta.tags = {"rain"};
  CHECK(compose_caption(schema, "", "", meta) == "The sound of rain");
}

TEST_CASE("waveform_transform: hard clip") {
  const auto out = waveform_transform(wave({0.2, 0.9}), TransformKind::kClip,
                                      {{"threshold", 0.5}});
  CHECK(out.data() == std::vector<double>{0.2, 0.5});
  CHECK_THROWS_AS(
      waveform_transform(wave({0.1}), TransformKind::kClip, {{"threshold", 0.0}}),
      ArgumentError);
}

TEST_CASE("waveform_transform: mask zeroes the span and nothing else") {
  std::vector<double> x(20, 0.5);
  const auto out = waveform_transform(wave(x), TransformKind::kMask,
                                      {{"begin", 0.0}, {"end", 10.0}});
  for (size_t i = 0; i < 10; ++i) CHECK(out.data()[i] == 0.0);
  for (size_t i = 10; i < 20; ++i) CHECK(out.data()[i] == 0.5);
  CHECK_THROWS_AS(waveform_transform(wave(x), TransformKind::kMask,
                                     {{"begin", 5.0}, {"end", 25.0}}),
                  ArgumentError);
}

TEST_CASE("waveform_transform: reverb impulse response is decay^k at k*delay") {
  std::vector<double> impulse(100, 0.0);
  impulse[0] = 1.0;
  const double decay = 0.5;
  const double delay = 20;
  const auto out = waveform_transform(wave(impulse), TransformKind::kReverb,
                                      {{"decay", decay}, {"delay", delay}});
  REQUIRE(out.size() == 100);
  for (size_t i = 0; i < 100; ++i) {
    double expected = 0.0;
    if (i % 20 == 0) expected = std::pow(decay, static_cast<double>(i / 20));
    CHECK(out.data()[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("waveform_transform: pitch keeps length and rate") {
  std::vector<double> x(4800);
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.5 * std::sin(2.0 * 3.14159265358979323846 * 440.0 * i / 48000.0);
  }
  for (double ratio : {0.5, 1.0, 1.5, 2.0}) {
    const auto out = waveform_transform(wave(x), TransformKind::kPitch, {{"ratio", ratio}});
    CHECK(out.size() == x.size());
    CHECK(out.sample_rate == 48000);
  }
  CHECK_THROWS_AS(waveform_transform(wave(x), TransformKind::kPitch, {{"ratio", 2.5}}),
                  ArgumentError);
}

TEST_CASE("ssim: identity is exactly 1") {
  RandomStream rng(9);
  Image img = constant_image(8, 8, 0.0);
  for (auto& p : img.pixels) p = rng.uniform(0.0, 255.0);
  CHECK(ssim(img, img) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ssim: constant-image closed form") {
  const auto zero = constant_image(4, 4, 0.0);
  const auto bright = constant_image(4, 4, 255.0);
  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double expected = c1 / (255.0 * 255.0 + c1);
  CHECK(ssim(zero, bright) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ssim: symmetric and bounded on random images") {
  RandomStream rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    Image x = constant_image(6, 6, 0.0);
    Image y = constant_image(6, 6, 0.0);
    for (auto& p : x.pixels) p = rng.uniform(0.0, 255.0);
    for (auto& p : y.pixels) p = rng.uniform(0.0, 255.0);
    const double sxy = ssim(x, y);
    CHECK(sxy == ssim(y, x));
    CHECK(sxy >= -1.0);
    CHECK(sxy <= 1.0);
  }
}

TEST_CASE("ssim: shape mismatch is an argument error") {
  CHECK_THROWS_AS(ssim(constant_image(2, 2, 1.0), constant_image(2, 3, 1.0)), ArgumentError);
}

TEST_CASE("select_keyframes: identical frames pass the as-written gate") {
  FrameSequence seq;
  for (int i = 0; i < 4; ++i) seq.frames.push_back(constant_image(4, 4, 100.0));
  const auto captions =
      select_keyframes(seq, 0.9, [](const Image&) { return std::string("same"); });
  CHECK(captions.size() == 3);  // n-1 captions
}

TEST_CASE("select_keyframes: maximally different constant frames emit nothing") {
  FrameSequence seq;
  seq.frames.push_back(constant_image(4, 4, 0.0));
  seq.frames.push_back(constant_image(4, 4, 255.0));
  const auto captions =
      select_keyframes(seq, 0.5, [](const Image&) { return std::string("x"); });
  CHECK(captions.empty());
}

TEST_CASE("select_keyframes: single frame yields empty list") {
  FrameSequence seq;
  seq.frames.push_back(constant_image(4, 4, 10.0));
  CHECK(select_keyframes(seq, 0.5, [](const Image&) { return std::string("x"); }).empty());
}

TEST_CASE("select_keyframes: inverted gate selects scene changes") {
  FrameSequence seq;
  seq.frames.push_back(constant_image(4, 4, 0.0));
  seq.frames.push_back(constant_image(4, 4, 255.0));
  const auto captions = select_keyframes(
      seq, 0.5, [](const Image&) { return std::string("change"); }, /*invert_gate=*/true);
  CHECK(captions.size() == 1);
}

TEST_CASE("select_keyframes: captioner failures are skipped and counted") {
  FrameSequence seq;
  for (int i = 0; i < 4; ++i) seq.frames.push_back(constant_image(4, 4, 50.0));
  int calls = 0;
  KeyframeReport report;
  const auto captions = select_keyframes(
      seq, 0.9,
      [&calls](const Image&) -> std::string {
        if (++calls == 2) throw std::runtime_error("captioner down");
        return "ok";
      },
      false, &report);
  CHECK(captions.size() == 2);
  CHECK(report.captioned == 2);
  CHECK(report.skipped == 1);
}

TEST_CASE("fuse_captions: stub contract") {
  CHECK(fuse_captions({}, "a dog barks") == "a dog barks");
  CHECK(fuse_captions({"a park"}, "a dog barks") == "a dog barks. Visuals: a park");
  const auto both = fuse_captions({"a park", "a ball"}, "a dog barks");
  CHECK(both == "a dog barks. Visuals: a park; a ball");
  CHECK_FALSE(fuse_captions({"a park"}, "").empty());
}

TEST_CASE("overlay_multilingual: sizes, shared audio and lookup translation") {
  LookupTranslationBackend backend(
      "en", {{"fr", {{"dog", "chien"}}}, {"de", {{"dog", "Hund"}}}});

  std::vector<CaptionedClip> clips(2);
  for (int i = 0; i < 2; ++i) {
    clips[static_cast<size_t>(i)].audio = wave(std::vector<double>(480, 0.25));
    auto& meta = clips[static_cast<size_t>(i)].meta;
    meta.key = "clip" + std::to_string(i);
    meta.language = "en";
    meta.description = "The sound of dog";
    meta.tags = {"dog"};
    meta.sample_rate = 48000;
    meta.duration = 0.01;
  }

  const auto out = overlay_multilingual(clips, {"en", "fr", "de"}, backend);
  REQUIRE(out.size() == 6);
  // audio shared by reference with the source clip
  CHECK(out[0].audio.samples.get() == clips[0].audio.samples.get());
  CHECK(out[5].audio.samples.get() == clips[1].audio.samples.get());
  CHECK(out[0].meta.language == "en");
  CHECK(out[0].meta.description == "The sound of dog");
  CHECK(out[1].meta.language == "fr");
  CHECK(out[1].meta.description == "The sound of chien");
  CHECK(out[1].meta.tags.front() == "chien");
  CHECK(out[2].meta.language == "de");
  CHECK(out[2].meta.description == "The sound of Hund");

  CHECK_THROWS_AS(overlay_multilingual(clips, {"xx"}, backend), ArgumentError);
}

TEST_CASE("overlay_multilingual: translation table loads from JSON") {
  duet::testing::TmpDir tmp;
  const auto path = tmp.file("table.json");
  {
    std::ofstream out(path);
    out << R"({"source": "en", "table": {"fr": {"dog": "chien", "white noise": "bruit blanc"}}})";
  }
  const auto backend = LookupTranslationBackend::from_json_file(path);
  CHECK(backend.supports("en"));
  CHECK(backend.supports("fr"));
  CHECK_FALSE(backend.supports("de"));
  CHECK(backend.translate("The sound of white noise", "fr") == "The sound of bruit blanc");
  CHECK(backend.translate("anything", "en") == "anything");
}

}  // TEST_SUITE
