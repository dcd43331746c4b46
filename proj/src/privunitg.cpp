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

#include "projunit/privunitg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "projunit/error.hpp"
#include "projunit/normal.hpp"
#include "projunit/simd.hpp"

namespace projunit {
namespace {

constexpr double kQEdge = 1e-12;
// Largest threshold whose upper tail mass is still a normal double.
constexpr double kTMax = 37.0;

// Single-client error on the privacy frontier at threshold t = Phi^{-1}(q),
// evaluated with tail-accurate q and 1 - q.
double FrontierError(double t, double eps, std::uint32_t dim) {
  const double denom = NormalCdf(t) + std::exp(eps) * NormalSf(t);
  // phi(t) (p/(1-q) - (1-p)/q) on the frontier; phi is never squared alone
  // because it underflows long before the product does.
  const double psi = NormalPdf(t) * (std::expm1(eps) / denom);
  return (dim + t * psi) / (psi * psi) - 1.0;
}

// Frontier parameters at threshold t, built from tail-accurate masses.
PrivUnitGParams ParamsAt(double t, double eps, std::uint32_t dim) {
  const double q = NormalCdf(t);
  const double tail = NormalSf(t);
  const double growth = std::exp(eps);
  const double denom = q + growth * tail;
  PrivUnitGParams params;
  params.eps = eps;
  params.dim = dim;
  params.p = growth * tail / denom;
  params.p_out = q / denom;
  params.q = q;
  params.q_tail = tail;
  params.sigma = 1.0 / std::sqrt(static_cast<double>(dim));
  params.gamma = params.sigma * t;
  params.m = params.sigma * NormalPdf(t) * std::expm1(eps) / denom;
  return params;
}

double Norm(std::span<const double> v) {
  return std::sqrt(simd::Active().dot(v.data(), v.data(), v.size()));
}

}  // namespace

double PrivUnitGParams::PrivacyLoss() const {
  return std::log(p) - std::log(p_out) + std::log(q) - std::log(q_tail);
}

std::string PrivUnitGParams::ToText() const {
  std::ostringstream out;
  out.precision(17);
  out << "eps=" << eps << "\ndim=" << dim << "\np=" << p << "\nq=" << q << "\nt=" << gamma / sigma
      << "\nm=" << m << "\n";
  return out.str();
}

PrivUnitGParams PrivUnitGParams::FromText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> fields;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    Require(eq != std::string::npos, ErrorCode::kDecode, "params line without '='");
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto number = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) Fail(ErrorCode::kDecode, std::string("params missing ") + key);
    double value = 0.0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    Require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kDecode,
            "params field is not a number");
    return value;
  };
  const double eps = number("eps");
  const double dim = number("dim");
  const double p = number("p");
  const double t = number("t");
  Require(dim >= 1.0 && dim <= 4294967295.0 && dim == std::floor(dim), ErrorCode::kDecode,
          "params dim is not a positive integer");
  Require(p > 0.0 && p < 1.0 && std::fabs(t) <= kTMax, ErrorCode::kDecode,
          "params p or t out of range");
  Require(std::fabs(number("q") - NormalCdf(t)) <= 1e-15, ErrorCode::kDecode,
          "stored q disagrees with t");
  PrivUnitGParams params = ParamsAt(t, eps, static_cast<std::uint32_t>(dim));
  params.p = p;
  params.p_out = 1.0 - p;
  params.m = ComputeM(params);
  Require(params.m > 0.0, ErrorCode::kDecode, "params give a non-positive debiasing scalar");
  const double m = number("m");
  Require(std::fabs(m - params.m) <= 1e-12 * std::max(1.0, std::fabs(m)), ErrorCode::kDecode,
          "stored m disagrees with (p, q, dim)");
  return params;
}

double ComputeM(double p, double q, double sigma) {
  Require(p >= 0.0 && p <= 1.0, ErrorCode::kDomain, "p must be in [0, 1]");
  Require(q > 0.0 && q < 1.0, ErrorCode::kDomain, "q must be in (0, 1)");
  Require(sigma > 0.0, ErrorCode::kDomain, "sigma must be positive");
  const double t = NormalQuantile(q);
  return sigma * NormalPdf(t) * (p / (1.0 - q) - (1.0 - p) / q);
}

double ComputeM(const PrivUnitGParams& params) {
  const double t = params.gamma / params.sigma;
  const double phi = NormalPdf(t);
  return params.sigma * (params.p * (phi / params.q_tail) - params.p_out * (phi / params.q));
}

PrivUnitGParams MakeParams(double eps, std::uint32_t dim, double p, double q) {
  Require(dim >= 1, ErrorCode::kDimension, "randomizer dimension must be >= 1");
  Require(q >= kQEdge && q <= 1.0 - kQEdge, ErrorCode::kDomain,
          "q too close to 0 or 1 for stable sampling");
  PrivUnitGParams params;
  params.eps = eps;
  params.dim = dim;
  params.p = p;
  params.q = q;
  params.p_out = 1.0 - p;
  params.q_tail = 1.0 - q;
  params.sigma = 1.0 / std::sqrt(static_cast<double>(dim));
  params.gamma = params.sigma * NormalQuantile(q);
  params.m = ComputeM(p, q, params.sigma);
  Require(params.m > 0.0, ErrorCode::kConfiguration,
          "debiasing scalar must be positive (need p > 1 - q)");
  return params;
}

double ExpectedSquaredError(double p, double q, std::uint32_t dim) {
  const double t = NormalQuantile(q);
  const double phi = NormalPdf(t);
  const double a = p / (1.0 - q) - (1.0 - p) / q;
  return (dim + t * phi * a) / (phi * phi * a * a) - 1.0;
}

double ExpectedSquaredError(const PrivUnitGParams& params) {
  const double t = params.gamma / params.sigma;
  const double phi = NormalPdf(t);
  const double psi = params.p * (phi / params.q_tail) - params.p_out * (phi / params.q);
  return (params.dim + t * psi) / (psi * psi) - 1.0;
}

PrivUnitGParams OptimizeParams(double eps, std::uint32_t dim) {
  Require(eps > 0.0, ErrorCode::kConfiguration, "eps must be positive");
  Require(eps <= 700.0, ErrorCode::kConfiguration, "eps too large");
  Require(dim >= 1, ErrorCode::kDimension, "randomizer dimension must be >= 1");

  const double t_lo = NormalQuantile(kQEdge);
  const double t_hi = kTMax;
  constexpr double kStep = 0.01;
  double best_t = std::numeric_limits<double>::quiet_NaN();
  double best = std::numeric_limits<double>::infinity();
  for (double t = t_lo; t <= t_hi; t += kStep) {
    const double e = FrontierError(t, eps, dim);
    if (std::isfinite(e) && e < best) {
      best = e;
      best_t = t;
    }
  }
  Require(std::isfinite(best), ErrorCode::kConfiguration,
          "PrivUnitG objective is not finite anywhere on the frontier");

  double a = std::max(t_lo, best_t - kStep);
  double b = std::min(t_hi, best_t + kStep);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = FrontierError(c, eps, dim);
  double fd = FrontierError(d, eps, dim);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = FrontierError(c, eps, dim);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = FrontierError(d, eps, dim);
    }
  }
  PrivUnitGParams params = ParamsAt(0.5 * (a + b), eps, dim);
  Require(params.m > 0.0, ErrorCode::kConfiguration, "optimized debiasing scalar is not positive");
  return params;
}

const PrivUnitGParams& CachedParams(double eps, std::uint32_t dim) {
  static std::mutex mu;
  static std::map<std::pair<double, std::uint32_t>, PrivUnitGParams> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({eps, dim});
  if (it == cache.end()) it = cache.emplace(std::pair{eps, dim}, OptimizeParams(eps, dim)).first;
  return it->second;
}

double SampleTruncGauss(double bound, TruncSide side, double sigma, Rng& rng) {
  Require(sigma > 0.0, ErrorCode::kDomain, "sigma must be positive");
  const double t = bound / sigma;
  const double u = rng.Uniform();
  if (side == TruncSide::kAbove) {
    const double tail = NormalSf(t);
    Require(tail > 0.0, ErrorCode::kDomain, "upper tail mass underflows");
    const double x = sigma * -NormalQuantile(tail * u);
    return std::max(x, bound);
  }
  const double head = NormalCdf(t);
  Require(head > 0.0, ErrorCode::kDomain, "lower tail mass underflows");
  const double x = sigma * NormalQuantile(head * u);
  return x < bound ? x : std::nextafter(bound, -std::numeric_limits<double>::infinity());
}

double SampleTruncGauss(double bound, TruncSide side, double sigma, const Seed128& seed) {
  Rng rng(seed, Domain::kRandomizer);
  return SampleTruncGauss(bound, side, sigma, rng);
}

std::vector<double> Randomize(std::span<const double> v, const PrivUnitGParams& params,
                              Rng& rng) {
  Require(v.size() == params.dim, ErrorCode::kDimension,
          "randomizer input has the wrong dimension");
  Require(std::fabs(Norm(v) - 1.0) <= 1e-6, ErrorCode::kDomain,
          "randomizer input must be unit norm");
  Require(params.m > 0.0, ErrorCode::kConfiguration, "debiasing scalar must be positive");
  const auto& kern = simd::Active();
  const bool in_cap = rng.Bernoulli(params.p);
  const double alpha = SampleTruncGauss(
      params.gamma, in_cap ? TruncSide::kAbove : TruncSide::kBelow, params.sigma, rng);
  std::vector<double> out(v.size());
  rng.FillNormal(out, params.sigma);
  const double along = kern.dot(out.data(), v.data(), v.size());
  kern.axpy(alpha - along, v.data(), out.data(), v.size());
  kern.scale(1.0 / params.m, out.data(), out.size());
  return out;
}

std::vector<double> Randomize(std::span<const double> v, const PrivUnitGParams& params,
                              const Seed128& seed) {
  Rng rng(seed, Domain::kRandomizer);
  return Randomize(v, params, rng);
}

double PrivacyAudit(const PrivUnitGParams& params, std::uint32_t angle_grid_size) {
  Require(angle_grid_size >= 1, ErrorCode::kConfiguration, "audit needs at least one angle");
  const double sigma = params.sigma;
  const double gamma = params.gamma;
  const double log_in = std::log(params.p / params.q_tail);
  const double log_out = std::log(params.p_out / params.q);
  const double log_norm =
      -0.5 * params.dim * std::log(2.0 * std::numbers::pi * sigma * sigma);
  // Output density at w (in the plane of v, v'; orthogonal parts cancel).
  auto log_density = [&](double w0, double w1, double proj) {
    const double gauss = log_norm - 0.5 * (w0 * w0 + w1 * w1) / (sigma * sigma);
    return gauss + (proj >= gamma ? log_in : log_out);
  };
  const double offset = sigma * 0.5;
  double worst = 0.0;
  for (std::uint32_t i = 1; i <= angle_grid_size; ++i) {
    const double theta = std::numbers::pi * i / angle_grid_size;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Witness outputs with <w, v> = gamma +- offset and <w, v'> = gamma +- offset.
    for (int a = -1; a <= 1; a += 2) {
      for (int b = -1; b <= 1; b += 2) {
        const double pv = gamma + a * offset;
        const double pw = gamma + b * offset;
        double w0 = pv;
        double w1 = 0.0;
        if (std::fabs(s) > 1e-12) {
          w1 = (pw - c * pv) / s;
        } else if (std::fabs(pw - c * pv) > 1e-12) {
          continue;  // v' = -v and this combination is infeasible
        }
        const double proj_v = w0;
        const double proj_vp = c * w0 + s * w1;
        const double ratio = log_density(w0, w1, proj_v) - log_density(w0, w1, proj_vp);
        worst = std::max(worst, std::fabs(ratio));
      }
    }
  }
  return worst;
}

ErrorConstantEstimate EstimateErrorConstant(std::uint32_t d, double eps, std::uint32_t n,
                                            std::uint32_t trials, const Seed128& seed) {
  Require(trials >= 10, ErrorCode::kConfiguration, "error-constant estimate needs >= 10 trials");
  Require(n >= 1 && d >= 1, ErrorCode::kDimension, "need n >= 1 and d >= 1");
  const PrivUnitGParams& params = CachedParams(eps, d);
  Rng data(seed, Domain::kData);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> v(d);
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::vector<double> truth(d, 0.0);
    std::vector<double> estimate(d, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
      data.FillNormal(v, 1.0);
      const double norm = Norm(v);
      for (double& x : v) x /= norm;
      const std::vector<double> out = Randomize(v, params, DeriveSeed(seed, t, i));
      for (std::uint32_t j = 0; j < d; ++j) {
        truth[j] += v[j] / n;
        estimate[j] += out[j] / n;
      }
    }
    double mse = 0.0;
    for (std::uint32_t j = 0; j < d; ++j) mse += (estimate[j] - truth[j]) * (estimate[j] - truth[j]);
    const double c = mse * n * eps / d;
    sum += c;
    sum_sq += c * c;
  }
  ErrorConstantEstimate out;
  out.d = d;
  out.eps = eps;
  out.n = n;
  out.trials = trials;
  out.c_hat = sum / trials;
  const double var = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
  out.c_stderr = std::sqrt(var / trials);
  return out;
}

}  // namespace projunit
