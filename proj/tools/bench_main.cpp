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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_lists.hpp"
#include "projunit/bench.hpp"
#include "projunit/error.hpp"
#include "projunit/privunitg.hpp"
#include "projunit/simd.hpp"

namespace {

using projunit::tools::ParseDims;
using projunit::tools::ParseDoubles;
using projunit::tools::SplitCommas;

struct SweepFlags {
  std::string d = "4096";
  std::string k;
  std::uint32_t k_divisor = 8;
  std::uint32_t n = 50;
  std::string eps = "10";
  std::string variants = "srht,rot,corr,direct";
  std::uint32_t reps = 30;
  std::uint64_t seed = 42;
  std::string out;
  double budget_secs = 0.0;
  unsigned threads = 0;
};

void AddSweepFlags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--d", f.d, "dimensions: list, a..b (doubling) or a,b,...,z");
  cmd->add_option("--k", f.k, "projection dimensions; default d / k-divisor");
  cmd->add_option("--k-divisor", f.k_divisor, "k = d / divisor when --k is absent");
  cmd->add_option("--n", f.n, "clients per round");
  cmd->add_option("--eps", f.eps, "privacy budgets, comma separated");
  cmd->add_option("--variants", f.variants,
                  "none,direct,rot,srht,gauss,corr,unbiased-rot,nu-srht,gaussian");
  cmd->add_option("--reps", f.reps, "repetitions per cell");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "CSV path (appended); stdout when absent");
  cmd->add_option("--budget-secs", f.budget_secs, "wall-clock budget per cell, 0 = none");
  cmd->add_option("--threads", f.threads, "worker threads (default LDP_THREADS or cores)");
}

projunit::ExperimentSpec ToSpec(const SweepFlags& f) {
  projunit::ExperimentSpec spec;
  spec.d_values = ParseDims(f.d);
  if (!f.k.empty()) spec.k_values = ParseDims(f.k);
  spec.k_divisor = f.k_divisor;
  spec.n = f.n;
  spec.eps_values = ParseDoubles(f.eps);
  for (const std::string& name : SplitCommas(f.variants)) {
    spec.mechanisms.push_back(projunit::ParseMechanism(name));
  }
  spec.reps = f.reps;
  spec.seed = projunit::Seed128{0, f.seed};
  spec.budget_secs = f.budget_secs;
  spec.threads = f.threads;
  return spec;
}

int Emit(const projunit::ExperimentResult& result, const std::string& out) {
  if (out.empty()) {
    std::cout << projunit::kCsvHeader << '\n';
    for (const auto& c : result.cells) {
      std::printf("%s,%u,%u,%u,%g,%u,%.6g,%.6g,%.6g,%.6g,%g\n", c.variant.c_str(), c.d, c.k,
                  c.n, c.eps, c.rep_count, c.mse, c.ci90, c.client_ns, c.server_ns, c.bits);
    }
  } else {
    projunit::WriteCsv(result, out);
  }
  if (!result.AllComplete()) {
    std::cerr << "some cells did not finish within the budget\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error, timing and constant sweeps for private mean estimation"};
  app.require_subcommand(1);

  SweepFlags error_flags;
  CLI::App* error_cmd = app.add_subcommand("error", "MSE with 90% confidence intervals");
  AddSweepFlags(error_cmd, error_flags);

  SweepFlags timing_flags;
  timing_flags.d = "4096..65536";
  timing_flags.eps = "10,16";
  timing_flags.n = 8;
  timing_flags.variants = "srht,rot,corr,direct";
  CLI::App* timing_cmd = app.add_subcommand("timing", "client and server wall-clock time");
  AddSweepFlags(timing_cmd, timing_flags);

  std::uint32_t const_d = 128;
  double const_eps = 8.0;
  std::uint32_t const_n = 1;
  std::uint32_t const_trials = 1000;
  std::uint64_t const_seed = 42;
  CLI::App* constants_cmd =
      app.add_subcommand("constants", "estimate the PrivUnitG error constant");
  constants_cmd->add_option("--d", const_d, "dimension");
  constants_cmd->add_option("--eps", const_eps, "privacy budget");
  constants_cmd->add_option("--n", const_n, "clients per trial");
  constants_cmd->add_option("--trials", const_trials, "trials");
  constants_cmd->add_option("--seed", const_seed, "master seed");

  CLI11_PARSE(app, argc, argv);
  try {
    std::cerr << "kernels: " << projunit::simd::IsaName(projunit::simd::Active().isa) << '\n';
    if (*error_cmd) return Emit(projunit::RunErrorExperiment(ToSpec(error_flags)), error_flags.out);
    if (*timing_cmd) {
      return Emit(projunit::RunTimingExperiment(ToSpec(timing_flags)), timing_flags.out);
    }
    const auto params = projunit::CachedParams(const_eps, const_d);
    const auto est = projunit::EstimateErrorConstant(const_d, const_eps, const_n, const_trials,
                                                     projunit::Seed128{0, const_seed});
    std::printf("d=%u eps=%g n=%u trials=%u\n", est.d, est.eps, est.n, est.trials);
    std::printf("p=%.12g q=%.12g m=%.12g\n", params.p, params.q, params.m);
    std::printf("closed-form single-client error=%.9g  c=%.9g\n",
                projunit::ExpectedSquaredError(params),
                projunit::ExpectedSquaredError(params) * const_eps / const_d);
    std::printf("c_hat=%.6g stderr=%.3g\n", est.c_hat, est.c_stderr);
    return 0;
  } catch (const projunit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
