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

// Private SGD for logistic regression on a synthetic two-class task, with a
// pluggable private mean estimator for each batch of clipped gradients.
//
// Each example is one client. Its gradient is clipped to norm `clip`, divided
// by `clip` and lifted onto the unit sphere of R^{d+1} by appending
// sqrt(1 - |g|^2); the server estimate drops that coordinate and multiplies
// by `clip` again. The Gaussian mechanism works on the unlifted vectors.
//
// The trainer reports the per-step eps and the number of steps. It does not
// compose them into an overall guarantee.

#ifndef PROJUNIT_DPSGD_HPP_
#define PROJUNIT_DPSGD_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "projunit/bench.hpp"
#include "projunit/rng.hpp"

namespace projunit {

struct TrainConfig {
  std::uint32_t d = 128;
  double clip = 1.0;
  std::uint32_t batch = 600;
  double lr = 0.1;
  double momentum = 0.5;
  std::uint32_t epochs = 10;
  double eps = 4.0;
  // kNone trains with clipped but non-private gradients.
  Mechanism variant = Mechanism::kNone;
  // Projection dimension; 0 selects d / 4.
  std::uint32_t k = 0;
  Seed128 seed;
};

void ValidateConfig(const TrainConfig& config);

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // 0 or 1
};

struct SyntheticTask {
  Dataset train;
  Dataset test;
};

// Two Gaussian clouds on either side of a random hyperplane through the
// origin, each point at least `margin` from it.
SyntheticTask MakeSyntheticTask(std::uint32_t d, std::uint32_t train_size,
                                std::uint32_t test_size, const Seed128& seed,
                                double margin = 0.05);

std::vector<double> Clip(std::span<const double> g, double bound);
// Unit vector in R^{d+1}.
std::vector<double> Lift(std::span<const double> g, double bound);
// Drops the last coordinate; InverseLift(Lift(g, b)) = g / b when |g| <= b.
std::vector<double> InverseLift(std::span<const double> u);

struct OptimizerState {
  std::vector<double> velocity;
};

// Privately averages the clipped gradients, folds the estimate into the
// momentum buffer and returns the parameter update -lr * velocity.
std::vector<double> PrivateStep(std::span<const std::vector<double>> gradients,
                                const TrainConfig& config, OptimizerState& state,
                                const Seed128& seed);

// Logistic loss gradient (sigmoid(<w, x>) - y) x.
std::vector<double> LogisticGradient(std::span<const double> w, std::span<const double> x,
                                     int y);
double LogisticLoss(std::span<const double> w, const Dataset& data);
double Accuracy(std::span<const double> w, const Dataset& data);

struct EpochStats {
  std::uint32_t epoch = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;
};

struct TrainResult {
  std::vector<EpochStats> curve;  // epoch 0 is the initial model
  std::vector<double> weights;
  std::uint64_t steps = 0;
  double eps_per_step = 0.0;
};

// Throws kDivergence when the training loss stops being finite.
TrainResult Train(const TrainConfig& config, const SyntheticTask& task);

// Columns: variant,eps,epoch,train_loss,test_accuracy,eps_per_step,steps.
void WriteCurveCsv(const TrainResult& result, const TrainConfig& config,
                   const std::string& path);

}  // namespace projunit

#endif  // PROJUNIT_DPSGD_HPP_
