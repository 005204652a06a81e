// Copyright 2026 The reupload Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "reupload/baselines.hpp"
#include "reupload/errors.hpp"
#include "test_util.hpp"

namespace reupload {
namespace {

NNModel random_model(CounterRng& rng, std::size_t d, std::size_t h, std::size_t k, Activation a) {
  NNModel m = NNModel::zeros(d, h, k, a);
  std::vector<double> flat(m.parameter_count());
  for (double& v : flat) v = rng.normal();
  m.set_flat(flat);
  return m;
}

Dataset linear_data(std::size_t n, std::uint64_t seed) {
  Dataset d{Problem::Circle, {}, seed};
  CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = testing::random_point(rng, 2);
    const std::size_t c = x[0] + 0.5 * x[1] > 0.1 ? 1 : 0;
    d.samples.push_back({std::move(x), c});
  }
  return d;
}

TEST(MatchWidth, Examples) {
  EXPECT_EQ(match_width(16, 2, 2), 2u);
  EXPECT_EQ(match_width(2 * 3 + 3 * 2, 2, 2), 2u);
  EXPECT_EQ(match_width(7, 2, 2), 1u);
  EXPECT_THROW(match_width(6, 2, 2), InvalidArgument);
  EXPECT_EQ(match_width(16, 2, 4), 1u);
  EXPECT_EQ(match_width(24, 4, 2), 3u);
}

TEST(MatchWidth, NeverExceedsBudget) {
  for (std::size_t q = 8; q < 80; ++q)
    for (std::size_t d = 1; d <= 4; ++d)
      for (std::size_t k = 2; k <= 4; ++k) {
        if (q < d + 1 + 2 * k) continue;
        const std::size_t h = match_width(q, d, k);
        ASSERT_GE(h, 1u);
        ASSERT_LE(h * (d + 1) + (h + 1) * k, q);
        ASSERT_GT((h + 1) * (d + 1) + (h + 2) * k, q);
      }
}

TEST(NNModel, SoftmaxSumsToOne) {
  CounterRng rng(51);
  for (Activation a : {Activation::Tanh, Activation::Relu, Activation::Logistic}) {
    const NNModel m = random_model(rng, 3, 4, 4, a);
    for (int t = 0; t < 100; ++t) {
      const auto p = m.softmax(testing::random_point(rng, 3));
      double s = 0.0;
      for (double v : p) s += v;
      ASSERT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(NNModel, FlatRoundTrip) {
  CounterRng rng(52);
  const NNModel m = random_model(rng, 2, 3, 2, Activation::Tanh);
  NNModel copy = NNModel::zeros(2, 3, 2, Activation::Tanh);
  copy.set_flat(m.flat());
  EXPECT_EQ(copy.flat(), m.flat());
  EXPECT_EQ(m.parameter_count(), 3u * 3 + 2 * 4);
  EXPECT_THROW(copy.set_flat(std::vector<double>(3)), InvalidArgument);
}

TEST(NNGradient, MatchesCentralDifferences) {
  CounterRng rng(53);
  for (Activation a : {Activation::Tanh, Activation::Relu, Activation::Logistic}) {
    for (int t = 0; t < 3; ++t) {
      NNModel m = random_model(rng, 2, 3, 3, a);
      Dataset d{Problem::Tricrown, {}, 0};
      for (int i = 0; i < 20; ++i) d.samples.push_back({testing::random_point(rng, 2), std::size_t(i % 3)});
      const auto g = nn_gradient(m, d);
      auto flat = m.flat();
      const double h = 1e-6;
      for (std::size_t i = 0; i < flat.size(); ++i) {
        const double keep = flat[i];
        flat[i] = keep + h;
        m.set_flat(flat);
        const double up = nn_loss(m, d);
        flat[i] = keep - h;
        m.set_flat(flat);
        const double down = nn_loss(m, d);
        flat[i] = keep;
        m.set_flat(flat);
        const double fd = (up - down) / (2 * h);
        ASSERT_LE(std::abs(fd - g[i]), 1e-5 * std::max(1.0, std::abs(fd))) << to_string(a) << " param " << i;
      }
    }
  }
}

TEST(TrainNN, LinearlySeparable) {
  NNTrainOptions opt;
  opt.epochs = 2000;
  opt.restarts = 2;
  const NNModel m = train_nn(linear_data(200, 1), 2, Activation::Tanh, 3, opt);
  EXPECT_GE(nn_accuracy(m, linear_data(1000, 2)), 0.99);
}

TEST(TrainNN, BestSoFarHistoryAndDeterminism) {
  NNTrainOptions opt;
  opt.epochs = 300;
  opt.restarts = 2;
  const Dataset d = sample_dataset(Problem::Circle, 100, 5);
  const NNModel a = train_nn(d, 2, std::nullopt, 7, opt);
  const NNModel b = train_nn(d, 2, std::nullopt, 7, opt);
  EXPECT_EQ(a.flat(), b.flat());
  EXPECT_EQ(a.activation, b.activation);
  ASSERT_EQ(a.loss_history.size(), opt.epochs);
  for (std::size_t i = 1; i < a.loss_history.size(); ++i) ASSERT_LE(a.loss_history[i], a.loss_history[i - 1]);
  EXPECT_LE(a.parameter_count(), 16u);
}

TEST(TrainNN, DivergenceIsReported) {
  NNTrainOptions opt;
  opt.epochs = 200;
  opt.learning_rate = 1e300;
  opt.restarts = 1;
  EXPECT_THROW(train_nn(linear_data(50, 1), 2, Activation::Relu, 1, opt), TrainingError);
}

TEST(TrainNN, RejectsEmptyData) {
  EXPECT_THROW(train_nn(Dataset{}, 2, Activation::Tanh, 1), InvalidArgument);
}

TEST(NNAccuracy, PerfectConstantAndPermutation) {
  // Hand-built perfect classifier for the half-plane x1 > 0.1 - 0.5 x2.
  NNModel m = NNModel::zeros(2, 1, 2, Activation::Tanh);
  m.set_flat(std::vector<double>{50, 25, -5, -10, 10, 0, 0});
  const Dataset d = linear_data(500, 9);
  EXPECT_EQ(nn_accuracy(m, d), 1.0);
  NNModel constant = NNModel::zeros(2, 1, 2, Activation::Tanh);
  constant.set_flat(std::vector<double>{0, 0, 0, 0, 0, 1, 0});
  const Dataset circle = sample_dataset(Problem::Circle, 4000, 3);
  EXPECT_NEAR(nn_accuracy(constant, circle), 0.5, 3 * std::sqrt(0.25 / 4000));
  Dataset shuffled = circle;
  std::reverse(shuffled.samples.begin(), shuffled.samples.end());
  EXPECT_EQ(nn_accuracy(constant, shuffled), nn_accuracy(constant, circle));
  EXPECT_THROW(nn_accuracy(m, sample_dataset(Problem::Sphere, 5, 1)), InvalidArgument);
}

TEST(NNJson, RoundTrip) {
  CounterRng rng(54);
  NNModel m = random_model(rng, 4, 2, 2, Activation::Logistic);
  m.loss_history = {0.7, 0.5};
  const NNModel back = nn_from_json(nn_to_json(m));
  EXPECT_EQ(back.flat(), m.flat());
  EXPECT_EQ(back.activation, m.activation);
  EXPECT_EQ(back.input_dim, 4u);
  EXPECT_EQ(back.hidden, 2u);
  EXPECT_EQ(back.classes, 2u);
}

}  // namespace
}  // namespace reupload
