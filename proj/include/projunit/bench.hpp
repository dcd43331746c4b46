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

// Desk-scale experiment harness: simulated protocol rounds, error and timing
// sweeps with Student-t confidence intervals, and CSV output.

#ifndef PROJUNIT_BENCH_HPP_
#define PROJUNIT_BENCH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "projunit/rng.hpp"

namespace projunit {

enum class Mechanism {
  kNone,  // exact (non-private) mean
  kDirect,
  kRot,
  kSrht,
  kGauss,
  kCorr,
  kUnbiasedRot,
  kNearlyUnbiased,
  kGaussianMech,
};

// "none", "direct", "rot", "srht", "gauss", "corr", "unbiased-rot", "nu-srht",
// "gaussian".
const char* MechanismName(Mechanism mechanism);
Mechanism ParseMechanism(const std::string& name);
// Whether k is a parameter of the mechanism.
bool UsesProjection(Mechanism mechanism);

struct RoundConfig {
  Mechanism mechanism = Mechanism::kDirect;
  std::uint32_t k = 0;
  double eps = 1.0;
  // Gaussian mechanism delta.
  double gaussian_delta = 1e-5;
  // Completion delta for nu-srht; 0 selects k / (n^2 d).
  double completion_delta = 0.0;
  // Replace every randomizer by the identity.
  bool noiseless = false;
};

struct RoundResult {
  std::vector<double> mu_hat;
  std::int64_t client_nanos = 0;  // summed over clients
  std::int64_t server_nanos = 0;
  std::uint64_t total_bits = 0;
};

// One round: every input is a client with seed DeriveClientSeed(seed, i);
// correlated mechanisms share a diagonal seeded from `seed`. All inputs must
// have the same dimension; protocol mechanisms need unit-norm inputs.
RoundResult RunRound(const RoundConfig& config, std::span<const std::vector<double>> inputs,
                     const Seed128& seed);

// mu uniform on the sphere, v_i = normalize(mu + N(0, I/d)).
std::vector<std::vector<double>> GenerateInputs(std::uint32_t d, std::uint32_t n,
                                                const Seed128& seed);

struct ExperimentSpec {
  std::vector<std::uint32_t> d_values;
  // Empty means k = d / k_divisor for each d.
  std::vector<std::uint32_t> k_values;
  std::uint32_t k_divisor = 8;
  std::uint32_t n = 50;
  std::vector<double> eps_values;
  std::vector<Mechanism> mechanisms;
  std::uint32_t reps = 30;
  Seed128 seed;
  // Wall-clock budget per cell; 0 disables it.
  double budget_secs = 0.0;
  // Worker threads; 0 reads LDP_THREADS and falls back to the core count.
  unsigned threads = 0;
};

struct CellResult {
  std::string variant;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  double eps = 0.0;
  std::uint32_t rep_count = 0;
  double mse = 0.0;
  double ci90 = 0.0;
  double client_ns = 0.0;  // per client
  double server_ns = 0.0;
  double bits = 0.0;  // per client
  bool complete = true;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  bool AllComplete() const;
};

// Mean and Student-t 90% half-width of the per-rep squared errors.
void MeanAndCi90(std::span<const double> samples, double* mean, double* half_width);

ExperimentResult RunErrorExperiment(const ExperimentSpec& spec);
// Two warmup rounds, then the median of five timed rounds per cell.
ExperimentResult RunTimingExperiment(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader =
    "variant,d,k,n,eps,rep_count,mse,ci90,client_ns,server_ns,bits";

// Appends rows to `path`, writing the header first if the file is new or
// empty. Incomplete cells report nan for every measured column.
void WriteCsv(const ExperimentResult& result, const std::string& path);
std::vector<CellResult> ReadCsv(const std::string& path);

unsigned WorkerCount(unsigned requested);

}  // namespace projunit

#endif  // PROJUNIT_BENCH_HPP_
