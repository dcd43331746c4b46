// Copyright 2026 The projunit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projunit/baselines.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "projunit/error.hpp"
#include "test_util.hpp"

namespace projunit {
namespace {

using testing::RandomUnit;

TEST(GaussianMechanismTest, NoiseScaleHandValue) {
  const GaussianMechanismConfig config{1.0, 1e-5, 1.0};
  EXPECT_NEAR(config.noise_sigma(), std::sqrt(2.0 * std::log(125000.0)), 1e-12);
  EXPECT_NEAR(config.noise_sigma(), 4.84481, 1e-5);
  const GaussianMechanismConfig scaled{2.0, 1e-5, 3.0};
  EXPECT_NEAR(scaled.noise_sigma(), 1.5 * config.noise_sigma(), 1e-12);
  EXPECT_THROW((GaussianMechanismConfig{0.0, 1e-5, 1.0}.noise_sigma()), Error);
  EXPECT_THROW((GaussianMechanismConfig{1.0, 1.0, 1.0}.noise_sigma()), Error);
}

TEST(GaussianMechanismTest, LargeBudgetReturnsTheInput) {
  const std::vector<double> v = RandomUnit(32, 1);
  const std::vector<double> out = GaussianRandomize(v, {1e9, 1e-5, 1.0}, {1, 1});
  EXPECT_LE(testing::MaxAbsDiff(out, v), 1e-6);
}

TEST(GaussianMechanismTest, PerCoordinateVarianceAndMean) {
  const GaussianMechanismConfig config{2.0, 1e-5, 1.0};
  const double sigma = config.noise_sigma();
  const std::uint32_t d = 8;
  const std::vector<double> v = RandomUnit(d, 2);
  const int n = 100000;
  std::vector<double> s1(d, 0.0), s2(d, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::vector<double> out = GaussianRandomize(v, config, {2, static_cast<std::uint64_t>(i)});
    for (std::uint32_t j = 0; j < d; ++j) {
      s1[j] += out[j] - v[j];
      s2[j] += (out[j] - v[j]) * (out[j] - v[j]);
    }
  }
  for (std::uint32_t j = 0; j < d; ++j) {
    const double mean = s1[j] / n;
    const double var = s2[j] / n - mean * mean;
    EXPECT_NEAR(var / (sigma * sigma), 1.0, 0.03) << j;
    EXPECT_LE(std::fabs(mean), 4.0 * sigma / std::sqrt(n)) << j;
  }
}

TEST(GaussianMechanismTest, AveragedErrorMatchesFormula) {
  const GaussianMechanismConfig config{4.0, 1e-5, 1.0};
  const std::uint32_t d = 128, n = 20;
  std::vector<std::vector<double>> inputs;
  for (std::uint32_t i = 0; i < n; ++i) inputs.push_back(RandomUnit(d, 10 + i));
  const int reps = 2000;
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> err(d, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::vector<double> out =
          GaussianRandomize(inputs[i], config, DeriveSeed({3, 0}, i, r));
      for (std::uint32_t j = 0; j < d; ++j) err[j] += (out[j] - inputs[i][j]) / n;
    }
    for (double e : err) total += e * e;
  }
  const double sigma = config.noise_sigma();
  EXPECT_NEAR(total / reps / (d * sigma * sigma / n), 1.0, 0.05);
}

TEST(GaussianMechanismTest, RejectsLongInputs) {
  std::vector<double> v = RandomUnit(16, 3);
  for (double& x : v) x *= 1.001;
  EXPECT_THROW(GaussianRandomize(v, {}, {1, 1}), Error);
  for (double& x : v) x *= 0.5;
  EXPECT_NO_THROW(GaussianRandomize(v, {}, {1, 1}));
}

TEST(GaussianMechanismTest, Deterministic) {
  const std::vector<double> v = RandomUnit(16, 4);
  EXPECT_EQ(GaussianRandomize(v, {}, {5, 5}), GaussianRandomize(v, {}, {5, 5}));
  EXPECT_NE(GaussianRandomize(v, {}, {5, 5}), GaussianRandomize(v, {}, {5, 6}));
}

}  // namespace
}  // namespace projunit
