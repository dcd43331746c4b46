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

#include "projunit/dpsgd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "projunit/error.hpp"

namespace projunit {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Sigmoid(double z) {
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

Dataset MakeSplit(std::span<const double> normal, std::uint32_t size, Rng& rng, double margin) {
  const std::size_t d = normal.size();
  const double spread = 1.0 / std::sqrt(static_cast<double>(d));
  Dataset out;
  out.x.reserve(size);
  out.y.reserve(size);
  for (std::uint32_t i = 0; i < size; ++i) {
    const int label = rng.Bernoulli(0.5) ? 1 : 0;
    std::vector<double> x(d);
    rng.FillNormal(x, spread);
    const double along = Dot(x, normal);
    const double offset = (label ? 1.0 : -1.0) * (margin + 0.3 * std::fabs(rng.Normal()));
    for (std::size_t j = 0; j < d; ++j) x[j] += (offset - along) * normal[j];
    out.x.push_back(std::move(x));
    out.y.push_back(label);
  }
  return out;
}

}  // namespace

void ValidateConfig(const TrainConfig& config) {
  Require(config.d >= 1, ErrorCode::kDimension, "model dimension must be positive");
  Require(config.clip > 0.0, ErrorCode::kConfiguration, "clip norm must be positive");
  Require(config.lr > 0.0, ErrorCode::kConfiguration, "learning rate must be positive");
  Require(config.momentum >= 0.0 && config.momentum < 1.0, ErrorCode::kConfiguration,
          "momentum must be in [0, 1)");
  Require(config.batch >= 1, ErrorCode::kConfiguration, "batch size must be positive");
  Require(config.eps > 0.0, ErrorCode::kConfiguration, "eps must be positive");
}

SyntheticTask MakeSyntheticTask(std::uint32_t d, std::uint32_t train_size,
                                std::uint32_t test_size, const Seed128& seed, double margin) {
  Require(d >= 2, ErrorCode::kDimension, "synthetic task needs d >= 2");
  Rng rng(seed, Domain::kData);
  std::vector<double> normal(d);
  rng.FillNormal(normal, 1.0);
  const double norm = std::sqrt(Dot(normal, normal));
  for (double& x : normal) x /= norm;
  SyntheticTask task;
  task.train = MakeSplit(normal, train_size, rng, margin);
  task.test = MakeSplit(normal, test_size, rng, margin);
  return task;
}

std::vector<double> Clip(std::span<const double> g, double bound) {
  Require(bound > 0.0, ErrorCode::kConfiguration, "clip bound must be positive");
  double sq = 0.0;
  for (double x : g) {
    Require(std::isfinite(x), ErrorCode::kDivergence, "gradient is not finite");
    sq += x * x;
  }
  const double norm = std::sqrt(sq);
  const double factor = norm > bound ? bound / norm : 1.0;
  std::vector<double> out(g.begin(), g.end());
  for (double& x : out) x *= factor;
  return out;
}

std::vector<double> Lift(std::span<const double> g, double bound) {
  std::vector<double> out = Clip(g, bound);
  double sq = 0.0;
  for (double& x : out) {
    x /= bound;
    sq += x * x;
  }
  out.push_back(std::sqrt(std::max(0.0, 1.0 - sq)));
  return out;
}

std::vector<double> InverseLift(std::span<const double> u) {
  Require(!u.empty(), ErrorCode::kDimension, "lifted vector is empty");
  return {u.begin(), u.end() - 1};
}

std::vector<double> PrivateStep(std::span<const std::vector<double>> gradients,
                                const TrainConfig& config, OptimizerState& state,
                                const Seed128& seed) {
  Require(!gradients.empty(), ErrorCode::kConfiguration, "batch is empty");
  const std::size_t d = gradients.front().size();
  std::vector<double> estimate;
  if (config.variant == Mechanism::kNone) {
    estimate.assign(d, 0.0);
    for (const auto& g : gradients) {
      const std::vector<double> c = Clip(g, config.clip);
      for (std::size_t j = 0; j < d; ++j) estimate[j] += c[j];
    }
    for (double& x : estimate) x /= static_cast<double>(gradients.size());
  } else {
    const bool lifted = config.variant != Mechanism::kGaussianMech;
    std::vector<std::vector<double>> inputs;
    inputs.reserve(gradients.size());
    for (const auto& g : gradients) {
      if (lifted) {
        inputs.push_back(Lift(g, config.clip));
      } else {
        std::vector<double> c = Clip(g, config.clip);
        for (double& x : c) x /= config.clip;
        inputs.push_back(std::move(c));
      }
    }
    RoundConfig round;
    round.mechanism = config.variant;
    round.k = config.k > 0 ? config.k : std::max<std::uint32_t>(1, config.d / 4);
    round.eps = config.eps;
    std::vector<double> mu = RunRound(round, inputs, seed).mu_hat;
    estimate = lifted ? InverseLift(mu) : std::move(mu);
    for (double& x : estimate) x *= config.clip;
  }
  if (state.velocity.size() != d) state.velocity.assign(d, 0.0);
  std::vector<double> update(d);
  for (std::size_t j = 0; j < d; ++j) {
    state.velocity[j] = config.momentum * state.velocity[j] + estimate[j];
    update[j] = -config.lr * state.velocity[j];
  }
  return update;
}

std::vector<double> LogisticGradient(std::span<const double> w, std::span<const double> x,
                                     int y) {
  const double r = Sigmoid(Dot(w, x)) - y;
  std::vector<double> g(x.begin(), x.end());
  for (double& v : g) v *= r;
  return g;
}

double LogisticLoss(std::span<const double> w, const Dataset& data) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    const double z = Dot(w, data.x[i]);
    const double s = data.y[i] ? z : -z;
    // log(1 + exp(-s)), stable for both signs.
    sum += s > 0.0 ? std::log1p(std::exp(-s)) : -s + std::log1p(std::exp(s));
  }
  return sum / static_cast<double>(data.x.size());
}

double Accuracy(std::span<const double> w, const Dataset& data) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    correct += ((Dot(w, data.x[i]) > 0.0) == (data.y[i] == 1)) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(data.x.size());
}

TrainResult Train(const TrainConfig& config, const SyntheticTask& task) {
  ValidateConfig(config);
  Require(!task.train.x.empty() && !task.test.x.empty(), ErrorCode::kConfiguration,
          "train and test splits must be nonempty");
  Require(task.train.x.front().size() == config.d, ErrorCode::kDimension,
          "task dimension does not match the model");
  TrainResult result;
  result.weights.assign(config.d, 0.0);
  result.eps_per_step = config.variant == Mechanism::kNone ? 0.0 : config.eps;
  result.curve.push_back(
      {0, LogisticLoss(result.weights, task.train), Accuracy(result.weights, task.test)});

  OptimizerState state;
  const std::size_t n = task.train.x.size();
  std::vector<std::size_t> order(n);
  for (std::uint32_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle(DeriveSeed(config.seed, 0, epoch), Domain::kData);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[shuffle.UniformInt(i)]);

    for (std::size_t begin = 0; begin < n; begin += config.batch) {
      const std::size_t end = std::min(n, begin + config.batch);
      std::vector<std::vector<double>> grads;
      grads.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        grads.push_back(
            LogisticGradient(result.weights, task.train.x[order[i]], task.train.y[order[i]]));
      }
      const std::vector<double> update =
          PrivateStep(grads, config, state, DeriveSeed(config.seed, 1, result.steps));
      for (std::uint32_t j = 0; j < config.d; ++j) result.weights[j] += update[j];
      ++result.steps;
    }
    const double loss = LogisticLoss(result.weights, task.train);
    if (!std::isfinite(loss)) {
      Fail(ErrorCode::kDivergence,
           "training loss is not finite after epoch " + std::to_string(epoch));
    }
    result.curve.push_back({epoch, loss, Accuracy(result.weights, task.test)});
  }
  return result;
}

void WriteCurveCsv(const TrainResult& result, const TrainConfig& config,
                   const std::string& path) {
  std::error_code ec;
  const bool fresh =
      !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  if (fresh) out << "variant,eps,epoch,train_loss,test_accuracy,eps_per_step,steps\n";
  char buf[160];
  for (const EpochStats& e : result.curve) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%u,%.17g,%.17g,%.17g,%llu\n",
                  MechanismName(config.variant), config.eps, e.epoch, e.train_loss,
                  e.test_accuracy, result.eps_per_step,
                  static_cast<unsigned long long>(result.steps));
    out << buf;
  }
  if (!out) Fail(ErrorCode::kIo, "write to " + path + " failed");
}

}  // namespace projunit
