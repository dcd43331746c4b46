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

// PrivUnitG: the Gaussian-approximation cap randomizer for unit vectors.
//
// Given unit v in R^dim, draw z ~ Ber(p) and
//   alpha ~ N(0, sigma^2) conditioned on alpha >= gamma  (z = 1)
//   alpha ~ N(0, sigma^2) conditioned on alpha <  gamma  (z = 0)
// with sigma^2 = 1/dim and gamma = sigma * Phi^{-1}(q). Add an orthogonal
// Gaussian V_perp ~ N(0, sigma^2 (I - v v^T)) and return (alpha v + V_perp) / m,
// where m = sigma phi(gamma/sigma) (p/(1-q) - (1-p)/q) makes the output
// unbiased.
//
// Before scaling, the output density is N(w; 0, sigma^2 I) times p/(1-q) on
// the cap {<w, v> >= gamma} and (1-p)/q off it, so the mechanism is eps-DP
// exactly when log(p q / ((1-p)(1-q))) <= eps.

#ifndef PROJUNIT_PRIVUNITG_HPP_
#define PROJUNIT_PRIVUNITG_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "projunit/rng.hpp"

namespace projunit {

struct PrivUnitGParams {
  double eps = 0.0;
  std::uint32_t dim = 0;
  double p = 0.0;
  double q = 0.0;
  // 1 - p and 1 - q, carried separately so parameters deep in the tail
  // (large eps) keep full relative precision.
  double p_out = 0.0;
  double q_tail = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double m = 0.0;

  // log(p q / ((1-p)(1-q))), the exact privacy loss of these parameters.
  double PrivacyLoss() const;
  // "eps=..\ndim=..\np=..\nq=..\nt=..\nm=..\n" with round-trip precision;
  // t = gamma / sigma is the authoritative threshold when reading back.
  std::string ToText() const;
  static PrivUnitGParams FromText(const std::string& text);
};

// Builds and validates parameters from (p, q). Throws kConfiguration when the
// debiasing scalar is not positive and kDomain for q outside [1e-12, 1-1e-12].
PrivUnitGParams MakeParams(double eps, std::uint32_t dim, double p, double q);

double ComputeM(double p, double q, double sigma);
double ComputeM(const PrivUnitGParams& params);

// Closed-form E||R(v) - v||^2 for a single client.
double ExpectedSquaredError(double p, double q, std::uint32_t dim);
double ExpectedSquaredError(const PrivUnitGParams& params);

// Minimizes ExpectedSquaredError over the privacy frontier
// p/(1-p) = e^eps (1-q)/q. Coarse scan over t = Phi^{-1}(q), then
// golden-section refinement to |dt| < 1e-9.
PrivUnitGParams OptimizeParams(double eps, std::uint32_t dim);

// Memoized OptimizeParams; thread-safe.
const PrivUnitGParams& CachedParams(double eps, std::uint32_t dim);

enum class TruncSide { kAbove, kBelow };

// N(0, sigma^2) conditioned on x >= bound (kAbove) or x < bound (kBelow), by
// inverse CDF on the tail mass so extreme bounds stay accurate.
double SampleTruncGauss(double bound, TruncSide side, double sigma, Rng& rng);
double SampleTruncGauss(double bound, TruncSide side, double sigma, const Seed128& seed);

// v must be unit norm within 1e-6 and have params.dim entries.
std::vector<double> Randomize(std::span<const double> v, const PrivUnitGParams& params,
                              const Seed128& seed);
std::vector<double> Randomize(std::span<const double> v, const PrivUnitGParams& params,
                              Rng& rng);

// Evaluates the exact output-density ratio of two inputs at angle theta over
// a grid of angles in (0, pi], with witness outputs in each of the four
// cap/non-cap combinations, and returns the largest log-ratio found.
double PrivacyAudit(const PrivUnitGParams& params, std::uint32_t angle_grid_size);

struct ErrorConstantEstimate {
  double c_hat = 0.0;
  double c_stderr = 0.0;
  std::uint32_t d = 0;
  double eps = 0.0;
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
};

// Runs the direct PrivUnitG protocol on random unit inputs and reports
// c = MSE * n * eps / d.
ErrorConstantEstimate EstimateErrorConstant(std::uint32_t d, double eps, std::uint32_t n,
                                            std::uint32_t trials, const Seed128& seed);

}  // namespace projunit

#endif  // PROJUNIT_PRIVUNITG_HPP_
