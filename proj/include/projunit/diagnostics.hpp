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

// Monte Carlo estimates of the two ensemble properties the error analysis
// depends on: E||W^T||^2 (bounded operator norm) and the bias
// ||E[W^T W v / ||W v||] - v|| (bounded bias).

#ifndef PROJUNIT_DIAGNOSTICS_HPP_
#define PROJUNIT_DIAGNOSTICS_HPP_

#include <cstdint>
#include <span>

#include "projunit/rng.hpp"
#include "projunit/transforms.hpp"

namespace projunit {

struct EnsembleDiagnostics {
  double opnorm_sq_estimate = 0.0;  // mean of ||W^T||^2
  double opnorm_sq_stderr = 0.0;
  double opnorm_excess = 0.0;       // max(0, estimate - d/k)
  double bias_norm_estimate = 0.0;  // ||mean(W^T W v/||Wv||) - v||
  double bias_norm_stderr = 0.0;
  std::uint32_t trials = 0;
};

// Squared spectral norm of W, from the largest eigenvalue of the k x k Gram
// matrix W W^T.
double SpectralNormSquared(const LinearTransform& w);

// v must be unit norm (within 1e-6) and trials >= 100. Correlated SRHT trials
// draw a fresh shared diagonal each time.
EnsembleDiagnostics MeasureDiagnostics(Ensemble ensemble, std::uint32_t d, std::uint32_t k,
                                       std::span<const double> v, std::uint32_t trials,
                                       const Seed128& seed);

}  // namespace projunit

#endif  // PROJUNIT_DIAGNOSTICS_HPP_
