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

#include "projunit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "projunit/baselines.hpp"
#include "projunit/error.hpp"
#include "projunit/protocol.hpp"
#include "projunit/transforms.hpp"

namespace projunit {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kSharedTag = 0x636f7272;  // "corr"

std::int64_t NanosSince(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

std::vector<double> ExactMean(std::span<const std::vector<double>> inputs) {
  std::vector<double> mean(inputs.front().size(), 0.0);
  for (const auto& v : inputs) {
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += v[j];
  }
  for (double& x : mean) x /= static_cast<double>(inputs.size());
  return mean;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
  return sum;
}

double Median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t mid = x.size() / 2;
  return x.size() % 2 ? x[mid] : 0.5 * (x[mid - 1] + x[mid]);
}

std::vector<std::uint32_t> KValues(const ExperimentSpec& spec, Mechanism mechanism,
                                   std::uint32_t d) {
  if (!UsesProjection(mechanism)) return {d};
  if (!spec.k_values.empty()) return spec.k_values;
  return {std::max<std::uint32_t>(1, d / std::max<std::uint32_t>(1, spec.k_divisor))};
}

struct Cell {
  Mechanism mechanism;
  std::uint32_t d;
  std::uint32_t k;
  double eps;
};

std::vector<Cell> EnumerateCells(const ExperimentSpec& spec) {
  Require(!spec.d_values.empty() && !spec.eps_values.empty() && !spec.mechanisms.empty(),
          ErrorCode::kConfiguration, "experiment needs d, eps and variant lists");
  Require(spec.n >= 1, ErrorCode::kConfiguration, "experiment needs n >= 1");
  std::vector<Cell> cells;
  for (std::uint32_t d : spec.d_values) {
    Require(d >= 1, ErrorCode::kDimension, "d must be positive");
    for (Mechanism mechanism : spec.mechanisms) {
      for (std::uint32_t k : KValues(spec, mechanism, d)) {
        Require(k >= 1 && k <= d, ErrorCode::kDimension, "every k must lie in [1, d]");
        for (double eps : spec.eps_values) cells.push_back({mechanism, d, k, eps});
      }
    }
  }
  return cells;
}

// Runs body(i) for i in [0, count) on a pool of workers; rethrows the first
// failure after all workers stop.
template <typename Body>
void ParallelFor(std::size_t count, unsigned threads, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

CellResult Incomplete(const Cell& cell, std::uint32_t n, std::uint32_t done) {
  CellResult r;
  r.variant = MechanismName(cell.mechanism);
  r.d = cell.d;
  r.k = cell.k;
  r.n = n;
  r.eps = cell.eps;
  r.rep_count = done;
  r.mse = r.ci90 = r.client_ns = r.server_ns = r.bits = kNan;
  r.complete = false;
  return r;
}

struct Tally {
  std::vector<double> errors;
  std::vector<double> client_ns;
  std::vector<double> server_ns;
  double bits = 0.0;
};

CellResult Summarize(const Cell& cell, std::uint32_t n, const Tally& tally, bool medians) {
  CellResult r = Incomplete(cell, n, static_cast<std::uint32_t>(tally.errors.size()));
  r.complete = true;
  MeanAndCi90(tally.errors, &r.mse, &r.ci90);
  if (medians) {
    r.client_ns = Median(tally.client_ns);
    r.server_ns = Median(tally.server_ns);
  } else {
    double c = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < tally.client_ns.size(); ++i) {
      c += tally.client_ns[i];
      s += tally.server_ns[i];
    }
    r.client_ns = c / tally.client_ns.size();
    r.server_ns = s / tally.server_ns.size();
  }
  r.bits = tally.bits;
  return r;
}

void Record(Tally& tally, const RoundResult& round, std::span<const double> truth,
            std::uint32_t n) {
  tally.errors.push_back(SquaredDistance(round.mu_hat, truth));
  tally.client_ns.push_back(static_cast<double>(round.client_nanos) / n);
  tally.server_ns.push_back(static_cast<double>(round.server_nanos));
  tally.bits = static_cast<double>(round.total_bits) / n;
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kNone:
      return "none";
    case Mechanism::kDirect:
      return "direct";
    case Mechanism::kRot:
      return "rot";
    case Mechanism::kSrht:
      return "srht";
    case Mechanism::kGauss:
      return "gauss";
    case Mechanism::kCorr:
      return "corr";
    case Mechanism::kUnbiasedRot:
      return "unbiased-rot";
    case Mechanism::kNearlyUnbiased:
      return "nu-srht";
    case Mechanism::kGaussianMech:
      return "gaussian";
  }
  return "unknown";
}

Mechanism ParseMechanism(const std::string& name) {
  for (Mechanism m : {Mechanism::kNone, Mechanism::kDirect, Mechanism::kRot, Mechanism::kSrht,
                      Mechanism::kGauss, Mechanism::kCorr, Mechanism::kUnbiasedRot,
                      Mechanism::kNearlyUnbiased, Mechanism::kGaussianMech}) {
    if (name == MechanismName(m)) return m;
  }
  Fail(ErrorCode::kConfiguration, "unknown variant '" + name + "'");
}

bool UsesProjection(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kRot:
    case Mechanism::kSrht:
    case Mechanism::kGauss:
    case Mechanism::kCorr:
    case Mechanism::kUnbiasedRot:
    case Mechanism::kNearlyUnbiased:
      return true;
    default:
      return false;
  }
}

RoundResult RunRound(const RoundConfig& config, std::span<const std::vector<double>> inputs,
                     const Seed128& seed) {
  Require(!inputs.empty(), ErrorCode::kConfiguration, "a round needs at least one client");
  const std::size_t n = inputs.size();
  const std::uint32_t d = static_cast<std::uint32_t>(inputs.front().size());
  for (const auto& v : inputs) {
    Require(v.size() == d, ErrorCode::kDimension, "clients disagree on d");
  }
  RoundResult out;

  if (config.mechanism == Mechanism::kNone || config.mechanism == Mechanism::kGaussianMech) {
    std::vector<std::vector<double>> noisy;
    if (config.mechanism == Mechanism::kGaussianMech && !config.noiseless) {
      const GaussianMechanismConfig gm{config.eps, config.gaussian_delta, 1.0};
      noisy.reserve(n);
      const auto start = Clock::now();
      for (std::size_t i = 0; i < n; ++i) {
        noisy.push_back(GaussianRandomize(inputs[i], gm, DeriveClientSeed(seed, i)));
      }
      out.client_nanos = NanosSince(start);
    }
    const auto start = Clock::now();
    out.mu_hat = ExactMean(noisy.empty() ? inputs : std::span<const std::vector<double>>(noisy));
    out.server_nanos = NanosSince(start);
    out.total_bits = 32ull * d * n;
    return out;
  }

  ClientOptions options;
  options.noiseless = config.noiseless;
  CorrelatedConfig shared{DeriveSeed(seed, kSharedTag), 1};
  double delta = config.completion_delta;
  if (config.mechanism == Mechanism::kNearlyUnbiased && delta <= 0.0) {
    delta = std::min(0.5, DefaultCompletionDelta(config.k, n, NextPowerOfTwo(d)));
  }

  std::vector<ClientMessage> messages;
  messages.reserve(n);
  const auto client_start = Clock::now();
  for (std::size_t i = 0; i < n; ++i) {
    const Seed128 s = DeriveClientSeed(seed, i);
    const std::vector<double>& v = inputs[i];
    switch (config.mechanism) {
      case Mechanism::kDirect:
        messages.push_back(DirectPrivUnitGClient(v, config.eps, s, options));
        break;
      case Mechanism::kRot:
        messages.push_back(ProjUnitClient(v, Ensemble::kRotation, config.k, config.eps, s,
                                          options));
        break;
      case Mechanism::kSrht:
        messages.push_back(ProjUnitClient(v, Ensemble::kSrht, config.k, config.eps, s, options));
        break;
      case Mechanism::kGauss:
        messages.push_back(ProjUnitClient(v, Ensemble::kGaussian, config.k, config.eps, s,
                                          options));
        break;
      case Mechanism::kCorr:
        messages.push_back(CorrelatedClient(v, shared, config.k, config.eps, s, options));
        break;
      case Mechanism::kUnbiasedRot:
        messages.push_back(UnbiasedRotationClient(v, config.k, config.eps, s, options));
        break;
      case Mechanism::kNearlyUnbiased:
        messages.push_back(
            NearlyUnbiasedClient(v, config.k, config.eps, delta, s, nullptr, options));
        break;
      default:
        Fail(ErrorCode::kConfiguration, "mechanism has no protocol client");
    }
  }
  out.client_nanos = NanosSince(client_start);
  ServerEstimate estimate = Aggregate(messages, &shared);
  out.mu_hat = std::move(estimate.mu_hat);
  out.server_nanos = estimate.server_nanos;
  out.total_bits = estimate.total_bits;
  return out;
}

std::vector<std::vector<double>> GenerateInputs(std::uint32_t d, std::uint32_t n,
                                                const Seed128& seed) {
  Require(d >= 1 && n >= 1, ErrorCode::kDimension, "need d >= 1 and n >= 1");
  Rng rng(seed, Domain::kData);
  auto normalize = [](std::vector<double>& x) {
    double sq = 0.0;
    for (double value : x) sq += value * value;
    const double inv = 1.0 / std::sqrt(sq);
    for (double& value : x) value *= inv;
  };
  std::vector<double> mu(d);
  rng.FillNormal(mu, 1.0);
  normalize(mu);
  const double spread = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::vector<double>> out(n, std::vector<double>(d));
  for (auto& v : out) {
    rng.FillNormal(v, spread);
    for (std::uint32_t j = 0; j < d; ++j) v[j] += mu[j];
    normalize(v);
  }
  return out;
}

bool ExperimentResult::AllComplete() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.complete; });
}

void MeanAndCi90(std::span<const double> samples, double* mean, double* half_width) {
  const std::size_t n = samples.size();
  Require(n >= 2, ErrorCode::kConfiguration, "a confidence interval needs >= 2 samples");
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double m = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / (n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  *mean = m;
  *half_width = boost::math::quantile(dist, 0.95) * sd / std::sqrt(static_cast<double>(n));
}

ExperimentResult RunErrorExperiment(const ExperimentSpec& spec) {
  Require(spec.reps >= 2, ErrorCode::kConfiguration, "confidence intervals need reps >= 2");
  const std::vector<Cell> cells = EnumerateCells(spec);
  ExperimentResult result;
  result.cells.resize(cells.size());
  ParallelFor(cells.size(), WorkerCount(spec.threads), [&](std::size_t index) {
    const Cell& cell = cells[index];
    const auto inputs = GenerateInputs(cell.d, spec.n, DeriveSeed(spec.seed, 0, cell.d));
    const std::vector<double> truth = ExactMean(inputs);
    const Seed128 cell_seed = DeriveSeed(spec.seed, 1, index);
    const RoundConfig config{cell.mechanism, cell.k, cell.eps};
    const auto start = Clock::now();
    Tally tally;
    for (std::uint32_t r = 0; r < spec.reps; ++r) {
      Record(tally, RunRound(config, inputs, DeriveSeed(cell_seed, r)), truth, spec.n);
      const double elapsed = NanosSince(start) * 1e-9;
      if (spec.budget_secs > 0.0 && elapsed > spec.budget_secs && r + 1 < spec.reps) {
        result.cells[index] = Incomplete(cell, spec.n, r + 1);
        return;
      }
    }
    result.cells[index] = Summarize(cell, spec.n, tally, false);
  });
  return result;
}

ExperimentResult RunTimingExperiment(const ExperimentSpec& spec) {
  constexpr std::uint32_t kWarmup = 2;
  constexpr std::uint32_t kTimed = 5;
  const std::vector<Cell> cells = EnumerateCells(spec);
  ExperimentResult result;
  result.cells.resize(cells.size());
  // Timing cells run one at a time so they do not compete for cores.
  for (std::size_t index = 0; index < cells.size(); ++index) {
    const Cell& cell = cells[index];
    const auto inputs = GenerateInputs(cell.d, spec.n, DeriveSeed(spec.seed, 0, cell.d));
    const std::vector<double> truth = ExactMean(inputs);
    const Seed128 cell_seed = DeriveSeed(spec.seed, 1, index);
    const RoundConfig config{cell.mechanism, cell.k, cell.eps};
    const auto start = Clock::now();
    Tally tally;
    bool complete = true;
    for (std::uint32_t r = 0; r < kWarmup + kTimed; ++r) {
      const RoundResult round = RunRound(config, inputs, DeriveSeed(cell_seed, r));
      if (r >= kWarmup) Record(tally, round, truth, spec.n);
      if (spec.budget_secs > 0.0 && NanosSince(start) * 1e-9 > spec.budget_secs &&
          r + 1 < kWarmup + kTimed) {
        complete = false;
        result.cells[index] =
            Incomplete(cell, spec.n, static_cast<std::uint32_t>(tally.errors.size()));
        break;
      }
    }
    if (complete) result.cells[index] = Summarize(cell, spec.n, tally, true);
  }
  return result;
}

void WriteCsv(const ExperimentResult& result, const std::string& path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  if (fresh) out << kCsvHeader << '\n';
  for (const CellResult& c : result.cells) {
    out << c.variant << ',' << c.d << ',' << c.k << ',' << c.n << ',' << FormatDouble(c.eps)
        << ',' << c.rep_count << ',' << FormatDouble(c.mse) << ',' << FormatDouble(c.ci90) << ','
        << FormatDouble(c.client_ns) << ',' << FormatDouble(c.server_ns) << ','
        << FormatDouble(c.bits) << '\n';
  }
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write to " + path + " failed");
}

std::vector<CellResult> ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)) && line == kCsvHeader, ErrorCode::kDecode,
          "missing CSV header");
  std::vector<CellResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    Require(fields.size() == 11, ErrorCode::kDecode, "CSV row does not have 11 fields");
    CellResult c;
    c.variant = fields[0];
    c.d = static_cast<std::uint32_t>(std::stoul(fields[1]));
    c.k = static_cast<std::uint32_t>(std::stoul(fields[2]));
    c.n = static_cast<std::uint32_t>(std::stoul(fields[3]));
    c.eps = std::strtod(fields[4].c_str(), nullptr);
    c.rep_count = static_cast<std::uint32_t>(std::stoul(fields[5]));
    c.mse = std::strtod(fields[6].c_str(), nullptr);
    c.ci90 = std::strtod(fields[7].c_str(), nullptr);
    c.client_ns = std::strtod(fields[8].c_str(), nullptr);
    c.server_ns = std::strtod(fields[9].c_str(), nullptr);
    c.bits = std::strtod(fields[10].c_str(), nullptr);
    c.complete = !std::isnan(c.mse);
    rows.push_back(std::move(c));
  }
  return rows;
}

unsigned WorkerCount(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LDP_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace projunit
