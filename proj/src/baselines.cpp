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

#include "projunit/error.hpp"

namespace projunit {

double GaussianMechanismConfig::noise_sigma() const {
  Require(eps > 0.0, ErrorCode::kConfiguration, "eps must be positive");
  Require(delta > 0.0 && delta < 1.0, ErrorCode::kConfiguration, "delta must be in (0, 1)");
  Require(sensitivity > 0.0, ErrorCode::kConfiguration, "sensitivity must be positive");
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / eps;
}

std::vector<double> GaussianRandomize(std::span<const double> v,
                                      const GaussianMechanismConfig& config,
                                      const Seed128& seed) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  Require(std::sqrt(sq) <= 1.0 + 1e-6, ErrorCode::kDomain,
          "Gaussian mechanism input must have norm at most 1");
  const double sigma = config.noise_sigma();
  std::vector<double> out(v.size());
  Rng rng(seed, Domain::kRandomizer);
  rng.FillNormal(out, sigma);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  return out;
}

}  // namespace projunit
