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

#include "duet/error.hpp"
#include "duet/loss/contrastive.hpp"
#include "duet/random.hpp"
#include "support/gradcheck.hpp"

using namespace duet;
using namespace duet::loss;
using namespace duet::nn;
using duet::testing::gradient_check;

namespace {

TensorPtr unit_rows(std::vector<int> shape, RandomStream& rng, bool requires_grad = false) {
  auto t = Tensor::zeros(shape, requires_grad);
  const int n = shape[0];
  const int d = shape[1];
  for (int r = 0; r < n; ++r) {
    double sq = 0.0;
    for (int c = 0; c < d; ++c) {
      const double v = rng.normal();
      t->value[static_cast<size_t>(r) * d + c] = v;
      sq += v * v;
    }
    const double norm = std::sqrt(sq);
    for (int c = 0; c < d; ++c) t->value[static_cast<size_t>(r) * d + c] /= norm;
  }
  return t;
}

TemperaturePair unit_temps() {
  TemperaturePair t;
  t.log_scale_a = Tensor::scalar(0.0, true);  // tau = 1
  t.log_scale_t = Tensor::scalar(0.0, true);
  return t;
}

}  // namespace

TEST_SUITE("loss") {

TEST_CASE("similarity: identical orthonormal sets give the identity matrix") {
  auto z = Tensor::from_values({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto s = similarity_matrix({z, z});
  CHECK(s->value[0] == 1.0);
  CHECK(s->value[1] == 0.0);
  CHECK(s->value[2] == 0.0);
  CHECK(s->value[3] == 1.0);
}

TEST_CASE("similarity: antipodal rows put -1 on the diagonal") {
  auto za = Tensor::from_values({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto zt = Tensor::from_values({2, 2}, {-1.0, 0.0, 0.0, -1.0});
  auto s = similarity_matrix({za, zt});
  CHECK(s->value[0] == -1.0);
  CHECK(s->value[3] == -1.0);
}

TEST_CASE("similarity matches brute-force dot products and stays in [-1,1]") {
  RandomStream rng(60);
  auto za = unit_rows({5, 8}, rng);
  auto zt = unit_rows({5, 8}, rng);
  auto s = similarity_matrix({za, zt});
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      double dot = 0.0;
      for (int c = 0; c < 8; ++c) {
        dot += za->value[static_cast<size_t>(i) * 8 + c] * zt->value[static_cast<size_t>(j) * 8 + c];
      }
      const double got = s->value[static_cast<size_t>(i) * 5 + j];
      CHECK(got == doctest::Approx(dot).epsilon(1e-12));
      CHECK(got >= -1.0 - 1e-12);
      CHECK(got <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("similarity rejects mismatched or non-unit input") {
  RandomStream rng(61);
  auto za = unit_rows({3, 4}, rng);
  auto zt = unit_rows({3, 5}, rng);
  CHECK_THROWS_AS(similarity_matrix({za, zt}), ArgumentError);
  auto bad = Tensor::from_values({1, 2}, {0.5, 0.5});  // norm != 1
  auto ok = Tensor::from_values({1, 2}, {1.0, 0.0});
  CHECK_THROWS_AS(similarity_matrix({bad, ok}), ArgumentError);
}

TEST_CASE("loss: N=1 is exactly zero") {
  auto z = Tensor::from_values({1, 4}, {1.0, 0.0, 0.0, 0.0});
  auto temps = unit_temps();
  CHECK(contrastive_loss({z, z}, temps)->item() == 0.0);
}

TEST_CASE("loss: N=2 orthonormal case matches the frozen oracle value") {
  // 2*ln(1 + e^-1), high-precision value frozen from an independent script
  constexpr double kExpected = 0.6265233750364457;
  auto z = Tensor::from_values({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto temps = unit_temps();
  const double loss_value = contrastive_loss({z, z}, temps)->item();
  CHECK(loss_value == doctest::Approx(kExpected).epsilon(1e-9));
}

TEST_CASE("loss: modality swap with temperatures is an exact symmetry") {
  RandomStream rng(62);
  auto za = unit_rows({4, 8}, rng);
  auto zt = unit_rows({4, 8}, rng);
  TemperaturePair temps;
  temps.log_scale_a = Tensor::scalar(0.7, true);
  temps.log_scale_t = Tensor::scalar(-0.2, true);
  const double forward_value = contrastive_loss({za, zt}, temps)->item();
  TemperaturePair swapped;
  swapped.log_scale_a = temps.log_scale_t;
  swapped.log_scale_t = temps.log_scale_a;
  const double swapped_value = contrastive_loss({zt, za}, swapped)->item();
  CHECK(std::abs(forward_value - swapped_value) <= 1e-12);
}

TEST_CASE("loss: joint row permutation leaves the value unchanged") {
  RandomStream rng(63);
  auto za = unit_rows({4, 6}, rng);
  auto zt = unit_rows({4, 6}, rng);
  auto temps = unit_temps();
  const double base = contrastive_loss({za, zt}, temps)->item();

  const std::vector<int> perm = {2, 0, 3, 1};
  auto pa = Tensor::zeros({4, 6});
  auto pt = Tensor::zeros({4, 6});
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 6; ++c) {
      pa->value[static_cast<size_t>(r) * 6 + c] =
          za->value[static_cast<size_t>(perm[static_cast<size_t>(r)]) * 6 + c];
      pt->value[static_cast<size_t>(r) * 6 + c] =
          zt->value[static_cast<size_t>(perm[static_cast<size_t>(r)]) * 6 + c];
    }
  }
  CHECK(contrastive_loss({pa, pt}, temps)->item() == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("loss: nonnegative, and separated pairs drive it to zero at high tau") {
  auto za = Tensor::from_values({3, 3}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  TemperaturePair temps;
  temps.log_scale_a = Tensor::scalar(std::log(100.0), true);
  temps.log_scale_t = Tensor::scalar(std::log(100.0), true);
  const double sharp = contrastive_loss({za, za}, temps)->item();
  CHECK(sharp >= 0.0);
  CHECK(sharp < 1e-6);

  RandomStream rng(64);
  auto ra = unit_rows({5, 4}, rng);
  auto rt = unit_rows({5, 4}, rng);
  CHECK(contrastive_loss({ra, rt}, unit_temps())->item() >= 0.0);
}

TEST_CASE("loss: gradients w.r.t. embeddings and log scales match FD") {
  RandomStream rng(65);
  auto za = unit_rows({3, 5}, rng, true);
  auto zt = unit_rows({3, 5}, rng, true);
  TemperaturePair temps;
  temps.log_scale_a = Tensor::scalar(0.4, true);
  temps.log_scale_t = Tensor::scalar(0.1, true);

  // The loss itself requires unit rows; perturbed inputs are re-normalized
  // inside the forward so FD stays within the valid domain.
  auto forward = [&]() -> TensorPtr {
    EmbeddingPair pair;
    pair.z_a = l2_normalize(za);
    pair.z_t = l2_normalize(zt);
    return contrastive_loss(pair, temps);
  };
  auto check = gradient_check({za, zt, temps.log_scale_a, temps.log_scale_t}, forward);
  CHECK(check.max_rel_err < 1e-4);
}

TEST_CASE("temperature pair: clamp keeps tau inside [1, 100]") {
  auto temps = TemperaturePair::fresh();
  CHECK(temps.tau_a() == doctest::Approx(1.0 / 0.07).epsilon(1e-12));
  temps.log_scale_a->value[0] = -3.0;
  temps.log_scale_t->value[0] = 9.0;
  temps.clamp();
  CHECK(temps.tau_a() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(temps.tau_t() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("loss rejects an empty batch shape") {
  auto z = Tensor::zeros({0, 4});
  auto temps = unit_temps();
  CHECK_THROWS_AS(contrastive_loss({z, z}, temps), ArgumentError);
}

}  // TEST_SUITE
