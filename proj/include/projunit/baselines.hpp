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

// Gaussian mechanism for vectors of norm at most one, calibrated with the
// classic (eps, delta) bound sigma = sensitivity * sqrt(2 ln(1.25/delta)) / eps.

#ifndef PROJUNIT_BASELINES_HPP_
#define PROJUNIT_BASELINES_HPP_

#include <span>
#include <vector>

#include "projunit/rng.hpp"

namespace projunit {

struct GaussianMechanismConfig {
  double eps = 1.0;
  double delta = 1e-5;
  double sensitivity = 1.0;

  double noise_sigma() const;
};

// v + N(0, noise_sigma^2 I). Requires |v| <= 1 + 1e-6.
std::vector<double> GaussianRandomize(std::span<const double> v,
                                      const GaussianMechanismConfig& config,
                                      const Seed128& seed);

}  // namespace projunit

#endif  // PROJUNIT_BASELINES_HPP_
