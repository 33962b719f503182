// Copyright 2026 The mmwtex Authors
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
#include <numeric>

#include "doctest.h"
#include "mmw/classify.hpp"
#include "mmw/error.hpp"
#include "test_support.hpp"

using namespace mmw;

namespace {

// Unstabilized textbook softmax, for comparison only.
std::vector<double> naive_softmax(const SoftmaxModel& m, const std::vector<double>& x) {
  std::vector<double> e(m.num_classes());
  double sum = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    double z = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) z += m.row(k)[j] * x[j];
    e[k] = std::exp(z);
    sum += e[k];
  }
  for (double& v : e) v /= sum;
  return e;
}

SoftmaxModel random_model(std::size_t n, std::size_t d, Pcg32& rng, double scale = 1.0) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("c" + std::to_string(k));
  return SoftmaxModel(labels, d, testing::random_vector(n * d, rng, -scale, scale));
}

TrainingSet random_training_set(std::size_t n, std::size_t d, std::size_t count, Pcg32& rng) {
  TrainingSet t;
  t.num_classes = n;
  for (std::size_t i = 0; i < count; ++i) {
    t.inputs.push_back(testing::random_vector(d, rng));
    t.labels.push_back(i % n);
  }
  return t;
}

std::vector<std::string> labels_of(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t k = 0; k < n; ++k) l.push_back("c" + std::to_string(k));
  return l;
}

}  // namespace

TEST_CASE("softmax_probs") {
  SUBCASE("zero weights give the uniform distribution") {
    const SoftmaxModel m(labels_of(4), 3);
    for (double p : softmax_probs(m, std::vector<double>{1.0, -2.0, 5.0})) CHECK(p == doctest::Approx(0.25));
  }

  SUBCASE("two-class closed form") {
    const SoftmaxModel m(labels_of(2), 1, {std::log(3.0), 0.0});
    const auto p = softmax_probs(m, std::vector<double>{1.0});
    CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("matches the naive formula for moderate logits") {
    Pcg32 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = random_model(5, 8, rng);
      const auto x = testing::random_vector(8, rng);
      const auto p = softmax_probs(m, x);
      const auto q = naive_softmax(m, x);
      double sum = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(std::abs(p[k] - q[k]) < 1e-10);
        CHECK(p[k] > 0.0);
        CHECK(p[k] <= 1.0);
        sum += p[k];
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }

  SUBCASE("stable for huge logits") {
    const SoftmaxModel m(labels_of(2), 1, {1000.0, 999.0});
    const auto p = softmax_probs(m, std::vector<double>{1.0});
    CHECK(std::isfinite(p[0]));
    CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
  }

  SUBCASE("invariant to a uniform logit shift") {
    Pcg32 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      auto m = random_model(4, 6, rng);
      const auto x = testing::random_vector(6, rng);
      const double xx = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
      const double c = rng.uniform(-20.0, 20.0);
      auto shifted = m;
      // w_k += c x / |x|^2 adds exactly c to every logit.
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < 6; ++j) shifted.weights()[k * 6 + j] += c * x[j] / xx;
      const auto p = softmax_probs(m, x), q = softmax_probs(shifted, x);
      for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(p[k] - q[k]) < 1e-12);
    }
  }

  SUBCASE("dimension mismatch") {
    const SoftmaxModel m(labels_of(2), 3);
    CHECK_THROWS_AS(softmax_probs(m, std::vector<double>{1.0}), Error);
  }
}

TEST_CASE("predict_class") {
  SUBCASE("uniform probabilities tie-break to class 0") {
    const SoftmaxModel m(labels_of(3), 2);
    CHECK(predict_class(m, std::vector<double>{1.0, 1.0}).index == 0);
  }
  SUBCASE("argmax") {
    const SoftmaxModel m(labels_of(3), 1, {std::log(0.1), std::log(0.7), std::log(0.2)});
    const auto p = predict_class(m, std::vector<double>{1.0});
    CHECK(p.index == 1);
    CHECK(p.probabilities[1] == doctest::Approx(0.7));
  }
  SUBCASE("agrees with a linear scan and is invariant to increasing logit transforms") {
    Pcg32 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = random_model(6, 4, rng);
      const auto x = testing::random_vector(4, rng);
      const auto probs = softmax_probs(m, x);
      std::size_t best = 0;
      for (std::size_t k = 0; k < probs.size(); ++k)
        if (probs[k] > probs[best]) best = k;
      CHECK(predict_class(m, x).index == best);
      auto z = m.logits(x);
      for (double& v : z) v = std::exp(v) * 3.0 + 1.0;
      CHECK(argmax(z) == best);
    }
  }
}

TEST_CASE("cross-entropy gradient matches central finite differences") {
  Pcg32 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.bounded(4), d = 1 + rng.bounded(6);
    auto m = random_model(n, d, rng, 0.5);
    const auto data = random_training_set(n, d, 3 * n, rng);
    std::vector<std::size_t> batch(data.inputs.size());
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    const auto g = cross_entropy_gradient(m, data, batch);
    const double h = 1e-5;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double w = m.weights()[i];
      m.weights()[i] = w + h;
      const double up = cross_entropy(m, data, batch);
      m.weights()[i] = w - h;
      const double down = cross_entropy(m, data, batch);
      m.weights()[i] = w;
      const double fd = (up - down) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-5 * std::max(1.0, std::abs(g[i])));
    }
  }
}

TEST_CASE("train_softmax") {
  SUBCASE("separable 1-D problem reaches full training accuracy") {
    TrainingSet t;
    t.num_classes = 2;
    t.inputs = {{1.0}, {-1.0}};
    t.labels = {0, 1};
    TrainConfig cfg;
    cfg.learning_rate = 0.1;
    const auto m = train_softmax(t, labels_of(2), cfg);
    CHECK(predict_class(m, t.inputs[0]).index == 0);
    CHECK(predict_class(m, t.inputs[1]).index == 1);
  }

  SUBCASE("deterministic under seed") {
    Pcg32 rng(6);
    const auto data = random_training_set(3, 5, 40, rng);
    TrainConfig cfg;
    cfg.batch_size = 7;
    cfg.epochs = 5;
    cfg.seed = 99;
    const auto a = train_softmax(data, labels_of(3), cfg);
    const auto b = train_softmax(data, labels_of(3), cfg);
    CHECK(a == b);
    cfg.seed = 100;
    CHECK_FALSE(train_softmax(data, labels_of(3), cfg) == a);
  }

  SUBCASE("duplicating every sample leaves a full-batch run unchanged") {
    Pcg32 rng(61);
    const auto data = random_training_set(3, 4, 12, rng);
    TrainingSet twice = data;
    twice.inputs.insert(twice.inputs.end(), data.inputs.begin(), data.inputs.end());
    twice.labels.insert(twice.labels.end(), data.labels.begin(), data.labels.end());
    TrainConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.epochs = 30;
    cfg.seed = 4;
    cfg.batch_size = 12;
    const auto a = train_softmax(data, labels_of(3), cfg);
    cfg.batch_size = 24;
    const auto b = train_softmax(twice, labels_of(3), cfg);
    CHECK(train_softmax(twice, labels_of(3), cfg) == b);
    for (std::size_t i = 0; i < a.weights().size(); ++i)
      CHECK(b.weights()[i] == doctest::Approx(a.weights()[i]).epsilon(1e-12));
  }

  SUBCASE("full-batch loss is non-increasing at a small learning rate") {
    Pcg32 rng(31);
    const auto data = random_training_set(3, 4, 30, rng);
    TrainConfig cfg;
    cfg.batch_size = 30;
    cfg.learning_rate = 1e-3;
    cfg.epochs = 200;
    std::vector<double> loss;
    train_softmax(data, labels_of(3), cfg, &loss);
    REQUIRE(loss.size() == 200);
    for (std::size_t e = 1; e < loss.size(); ++e) CHECK(loss[e] <= loss[e - 1] + 1e-9);
    CHECK(loss.back() < loss.front());
  }

  SUBCASE("rejects bad input") {
    TrainingSet t;
    t.num_classes = 3;
    t.inputs = {{1.0}, {2.0}};
    t.labels = {0, 1};
    CHECK_THROWS_AS(train_softmax(t, labels_of(3), TrainConfig{}), Error);  // class 2 empty
    t.num_classes = 2;
    t.inputs = {{1.0}, {2.0, 3.0}};
    CHECK_THROWS_AS(train_softmax(t, labels_of(2), TrainConfig{}), Error);
    t.inputs = {{1.0}, {2.0}};
    TrainConfig zero;
    zero.epochs = 0;
    CHECK_THROWS_AS(train_softmax(t, labels_of(2), zero), Error);
  }
}

TEST_CASE("model persistence") {
  Pcg32 rng(9);
  const auto m = random_model(4, 7, rng, 3.0);
  const std::string text = serialize_model(m);
  CHECK(text.rfind("MMWSOFTMAX 1 4 7\n", 0) == 0);
  CHECK(parse_model(text) == m);
  CHECK_THROWS_AS(parse_model("MMWSOFTMAX 1 2 2\n1 2\n"), Error);
  CHECK_THROWS_AS(parse_model("MMWSOFTMAX 1 1 2\n1 2 3\na\n"), Error);
  CHECK_THROWS_AS(parse_model("MMWSOFTMAX 1 1 2\n1 nan\na\n"), Error);
  CHECK_THROWS_AS(parse_model("SOFTMAX 1 1 2\n1 2\na\n"), Error);
}
