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

#include "projunit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "projunit/error.hpp"
#include "projunit/simd.hpp"

namespace projunit {

double SpectralNormSquared(const LinearTransform& w) {
  const std::uint32_t k = w.output_dim();
  std::vector<double> gram(std::size_t{k} * k);
  std::vector<double> e(k, 0.0);
  for (std::uint32_t i = 0; i < k; ++i) {
    e[i] = 1.0;
    const std::vector<double> col = w.Apply(w.ApplyAdjoint(e));
    std::copy(col.begin(), col.end(), gram.begin() + std::size_t{i} * k);
    e[i] = 0.0;
  }
  const auto& kern = simd::Active();
  std::vector<double> x(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> y(k);
  double lambda = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    for (std::uint32_t i = 0; i < k; ++i) y[i] = kern.dot(gram.data() + std::size_t{i} * k, x.data(), k);
    const double next = std::sqrt(kern.dot(y.data(), y.data(), k));
    if (next == 0.0) return 0.0;
    for (std::uint32_t i = 0; i < k; ++i) x[i] = y[i] / next;
    const bool converged = std::fabs(next - lambda) <= 1e-13 * next;
    lambda = next;
    if (converged) break;
  }
  return lambda;
}

EnsembleDiagnostics MeasureDiagnostics(Ensemble ensemble, std::uint32_t d, std::uint32_t k,
                                       std::span<const double> v, std::uint32_t trials,
                                       const Seed128& seed) {
  Require(v.size() == d, ErrorCode::kDimension, "diagnostic vector has wrong dimension");
  Require(trials >= 100, ErrorCode::kConfiguration, "diagnostics need at least 100 trials");
  const double norm = std::sqrt(simd::Active().dot(v.data(), v.data(), v.size()));
  Require(std::fabs(norm - 1.0) <= 1e-6, ErrorCode::kDomain, "diagnostic vector must be unit norm");

  std::vector<double> sum(d, 0.0);
  std::vector<double> sum_sq(d, 0.0);
  double op_sum = 0.0;
  double op_sum_sq = 0.0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    const Seed128 trial_seed = DeriveSeed(seed, t);
    const std::optional<Seed128> shared =
        ensemble == Ensemble::kCorrelatedSrht ? std::optional(DeriveSeed(seed, t, 1))
                                              : std::nullopt;
    const LinearTransform w = Realize(MakeSpec(ensemble, d, k, trial_seed, shared));
    const double op = SpectralNormSquared(w);
    op_sum += op;
    op_sum_sq += op * op;
    std::vector<double> wv = w.Apply(v);
    const double wv_norm = std::sqrt(simd::Active().dot(wv.data(), wv.data(), k));
    if (wv_norm > 0.0) {
      for (double& x : wv) x /= wv_norm;
    }
    const std::vector<double> z = w.ApplyAdjoint(wv);
    for (std::uint32_t i = 0; i < d; ++i) {
      sum[i] += z[i];
      sum_sq[i] += z[i] * z[i];
    }
  }
  const double n = trials;
  EnsembleDiagnostics out;
  out.trials = trials;
  out.opnorm_sq_estimate = op_sum / n;
  const double op_var = std::max(0.0, (op_sum_sq - op_sum * op_sum / n) / (n - 1));
  out.opnorm_sq_stderr = std::sqrt(op_var / n);
  out.opnorm_excess =
      std::max(0.0, out.opnorm_sq_estimate - static_cast<double>(d) / static_cast<double>(k));
  double bias_sq = 0.0;
  double var_total = 0.0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const double mean = sum[i] / n;
    bias_sq += (mean - v[i]) * (mean - v[i]);
    var_total += std::max(0.0, (sum_sq[i] - sum[i] * sum[i] / n) / (n - 1));
  }
  out.bias_norm_estimate = std::sqrt(bias_sq);
  out.bias_norm_stderr = std::sqrt(var_total / n);
  return out;
}

}  // namespace projunit
