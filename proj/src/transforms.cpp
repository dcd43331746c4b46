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

#include "projunit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "projunit/error.hpp"
#include "projunit/simd.hpp"

namespace projunit {
namespace {

// Largest k*d realized as an explicit matrix or reflector set (2 GiB of doubles).
constexpr std::uint64_t kMaxDenseEntries = std::uint64_t{1} << 28;

void CheckDims(std::uint32_t d, std::uint32_t k) {
  if (d == 0 || k == 0 || k > d) {
    Fail(ErrorCode::kDimension,
         "need 1 <= k <= d, got d=" + std::to_string(d) + " k=" + std::to_string(k));
  }
}

void CheckLength(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    Fail(ErrorCode::kDimension, std::string(what) + ": expected length " +
                                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

const char* EnsembleName(Ensemble ensemble) {
  switch (ensemble) {
    case Ensemble::kRotation:
      return "rotation";
    case Ensemble::kSrht:
      return "srht";
    case Ensemble::kGaussian:
      return "gaussian";
    case Ensemble::kCorrelatedSrht:
      return "correlated-srht";
  }
  return "unknown";
}

bool IsHadamardEnsemble(Ensemble ensemble) {
  return ensemble == Ensemble::kSrht || ensemble == Ensemble::kCorrelatedSrht;
}

std::uint32_t NextPowerOfTwo(std::uint32_t n) {
  Require(n >= 1 && n <= (1u << 31), ErrorCode::kDimension, "dimension out of range");
  std::uint32_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> PadToPowerOfTwo(std::span<const double> v) {
  std::vector<double> out(NextPowerOfTwo(static_cast<std::uint32_t>(v.size())), 0.0);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

void FwhtInPlace(std::span<double> x) {
  if (!IsPowerOfTwo(x.size())) {
    Fail(ErrorCode::kDimension,
         "Walsh-Hadamard length must be a power of two, got " + std::to_string(x.size()));
  }
  simd::Active().fwht(x.data(), x.size());
}

std::vector<double> Fwht(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  FwhtInPlace(out);
  return out;
}

std::vector<std::uint32_t> SampleWithoutReplacement(std::uint32_t d, std::uint32_t k,
                                                    const Seed128& seed) {
  Require(k <= d, ErrorCode::kDimension, "cannot sample more indices than the dimension");
  Rng rng(seed, Domain::kIndices);
  std::vector<std::uint32_t> out(k);
  // Dense and sparse variants perform the same swaps and draws.
  if (d <= (1u << 16) || std::uint64_t{k} * 16 >= d) {
    std::vector<std::uint32_t> pool(d);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::uint32_t>(i + rng.UniformInt(d - i));
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
  } else {
    std::unordered_map<std::uint32_t, std::uint32_t> moved;
    moved.reserve(2 * k);
    auto at = [&](std::uint32_t i) {
      auto it = moved.find(i);
      return it == moved.end() ? i : it->second;
    };
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::uint32_t>(i + rng.UniformInt(d - i));
      const std::uint32_t vi = at(i);
      const std::uint32_t vj = at(j);
      moved[i] = vj;
      moved[j] = vi;
      out[i] = vj;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> RademacherSigns(std::uint32_t d, const Seed128& seed) {
  Rng rng(seed, Domain::kSigns);
  std::vector<double> signs(d);
  std::uint32_t word = 0;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (i % 32 == 0) word = rng.NextU32();
    signs[i] = ((word >> (i % 32)) & 1u) ? -1.0 : 1.0;
  }
  return signs;
}

void ValidateSpec(const TransformSpec& spec) {
  CheckDims(spec.d, spec.k);
  if (IsHadamardEnsemble(spec.ensemble)) {
    if (!IsPowerOfTwo(spec.d)) {
      Fail(ErrorCode::kDimension,
           "Hadamard ensembles need a power-of-two d, got " + std::to_string(spec.d));
    }
  } else {
    Require(!spec.indices.has_value(), ErrorCode::kConfiguration,
            "row indices only apply to Hadamard ensembles");
    if (std::uint64_t{spec.d} * spec.k > kMaxDenseEntries) {
      Fail(ErrorCode::kConfiguration, "k*d too large to realize a dense ensemble");
    }
  }
  Require(spec.ensemble == Ensemble::kCorrelatedSrht || !spec.shared_seed.has_value(),
          ErrorCode::kConfiguration, "shared seed only applies to correlated SRHT");
  if (spec.indices) {
    const auto& idx = *spec.indices;
    CheckLength(idx.size(), spec.k, "row indices");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= spec.d) Fail(ErrorCode::kDimension, "row index out of range");
      if (i > 0 && idx[i] <= idx[i - 1]) {
        Fail(ErrorCode::kConfiguration, "row indices must be sorted and distinct");
      }
    }
  }
}

TransformSpec MakeSpec(Ensemble ensemble, std::uint32_t d, std::uint32_t k,
                       const Seed128& seed, std::optional<Seed128> shared_seed) {
  TransformSpec spec{ensemble, d, k, seed, std::nullopt, shared_seed};
  CheckDims(d, k);
  if (IsHadamardEnsemble(ensemble)) {
    if (!IsPowerOfTwo(d)) ValidateSpec(spec);
    spec.indices = SampleWithoutReplacement(d, k, seed);
  }
  ValidateSpec(spec);
  return spec;
}

LinearTransform Realize(const TransformSpec& spec) {
  ValidateSpec(spec);
  LinearTransform w;
  w.spec_ = spec;
  const std::uint32_t d = spec.d;
  const std::uint32_t k = spec.k;
  w.scale_ = std::sqrt(static_cast<double>(d) / static_cast<double>(k));
  const auto& kern = simd::Active();

  switch (spec.ensemble) {
    case Ensemble::kRotation: {
      // Householder QR of a d x k Gaussian matrix, with each reflector drawn
      // from a fresh Gaussian vector: by rotation invariance the trailing part
      // of column j after the first j reflections is again i.i.d. Gaussian.
      LinearTransform::Householder h;
      h.offsets.resize(k);
      h.column_signs.resize(k);
      std::size_t total = 0;
      for (std::uint32_t j = 0; j < k; ++j) {
        h.offsets[j] = total;
        total += d - j;
      }
      h.reflectors.resize(total);
      Rng rng(spec.seed, Domain::kRotation);
      for (std::uint32_t j = 0; j < k; ++j) {
        double* x = h.reflectors.data() + h.offsets[j];
        const std::size_t len = d - j;
        rng.FillNormal({x, len}, 1.0);
        const double norm = std::sqrt(kern.dot(x, x, len));
        const double s = x[0] >= 0.0 ? 1.0 : -1.0;
        // H x = -s |x| e_0, so R_jj = -s |x| and sign(R_jj) = -s.
        h.column_signs[j] = -s;
        x[0] += s * norm;
        const double vnorm = std::sqrt(kern.dot(x, x, len));
        if (vnorm > 0.0) {
          kern.scale(1.0 / vnorm, x, len);
        } else {
          std::fill(x, x + len, 0.0);
        }
      }
      w.realization_ = std::move(h);
      break;
    }
    case Ensemble::kGaussian: {
      LinearTransform::DenseMatrix m;
      m.rows.resize(std::size_t{k} * d);
      Rng rng(spec.seed, Domain::kGaussian);
      rng.FillNormal(m.rows, 1.0 / std::sqrt(static_cast<double>(k)));
      w.scale_ = 1.0;
      w.realization_ = std::move(m);
      break;
    }
    case Ensemble::kSrht:
    case Ensemble::kCorrelatedSrht: {
      LinearTransform::Hadamard had;
      Seed128 sign_seed = spec.seed;
      if (spec.ensemble == Ensemble::kCorrelatedSrht) {
        Require(spec.shared_seed.has_value(), ErrorCode::kConfiguration,
                "correlated SRHT needs the shared diagonal seed");
        sign_seed = *spec.shared_seed;
      }
      had.signs = RademacherSigns(d, sign_seed);
      had.indices = spec.indices ? *spec.indices : SampleWithoutReplacement(d, k, spec.seed);
      if (!w.spec_.indices) w.spec_.indices = had.indices;
      w.realization_ = std::move(had);
      break;
    }
  }
  return w;
}

LinearTransform SampleRotation(std::uint32_t d, std::uint32_t k, const Seed128& seed) {
  return Realize(MakeSpec(Ensemble::kRotation, d, k, seed));
}

LinearTransform SampleSrht(std::uint32_t d, std::uint32_t k, const Seed128& seed) {
  return Realize(MakeSpec(Ensemble::kSrht, d, k, seed));
}

LinearTransform SampleGaussian(std::uint32_t d, std::uint32_t k, const Seed128& seed) {
  return Realize(MakeSpec(Ensemble::kGaussian, d, k, seed));
}

LinearTransform SampleCorrelatedSrht(std::uint32_t d, std::uint32_t k, const Seed128& seed,
                                     const Seed128& shared_seed) {
  return Realize(MakeSpec(Ensemble::kCorrelatedSrht, d, k, seed, shared_seed));
}

std::vector<double> LinearTransform::Apply(std::span<const double> v) const {
  CheckLength(v.size(), spec_.d, "apply input");
  const auto& kern = simd::Active();
  const std::uint32_t d = spec_.d;
  const std::uint32_t k = spec_.k;
  std::vector<double> out(k);
  if (const auto* h = std::get_if<Householder>(&realization_)) {
    std::vector<double> y(v.begin(), v.end());
    for (std::uint32_t j = 0; j < k; ++j) {
      const double* r = h->reflectors.data() + h->offsets[j];
      const std::size_t len = d - j;
      const double t = kern.dot(r, y.data() + j, len);
      kern.axpy(-2.0 * t, r, y.data() + j, len);
      out[j] = scale_ * h->column_signs[j] * y[j];
    }
  } else if (const auto* m = std::get_if<DenseMatrix>(&realization_)) {
    for (std::uint32_t i = 0; i < k; ++i) {
      out[i] = kern.dot(m->rows.data() + std::size_t{i} * d, v.data(), d);
    }
  } else {
    const auto& had = std::get<Hadamard>(realization_);
    std::vector<double> y(d);
    for (std::uint32_t i = 0; i < d; ++i) y[i] = had.signs[i] * v[i];
    kern.fwht(y.data(), d);
    for (std::uint32_t i = 0; i < k; ++i) out[i] = scale_ * y[had.indices[i]];
  }
  return out;
}

void LinearTransform::AccumulateAdjoint(std::span<const double> u, double weight,
                                        std::span<double> acc) const {
  CheckLength(u.size(), spec_.k, "adjoint input");
  CheckLength(acc.size(), spec_.d, "adjoint accumulator");
  const auto& kern = simd::Active();
  const std::uint32_t d = spec_.d;
  const std::uint32_t k = spec_.k;
  if (const auto* h = std::get_if<Householder>(&realization_)) {
    std::vector<double> y(d, 0.0);
    for (std::uint32_t j = 0; j < k; ++j) y[j] = h->column_signs[j] * u[j];
    for (std::uint32_t j = k; j-- > 0;) {
      const double* r = h->reflectors.data() + h->offsets[j];
      const std::size_t len = d - j;
      const double t = kern.dot(r, y.data() + j, len);
      kern.axpy(-2.0 * t, r, y.data() + j, len);
    }
    kern.axpy(weight * scale_, y.data(), acc.data(), d);
  } else if (const auto* m = std::get_if<DenseMatrix>(&realization_)) {
    for (std::uint32_t i = 0; i < k; ++i) {
      kern.axpy(weight * u[i], m->rows.data() + std::size_t{i} * d, acc.data(), d);
    }
  } else {
    const auto& had = std::get<Hadamard>(realization_);
    std::vector<double> y(d, 0.0);
    for (std::uint32_t i = 0; i < k; ++i) y[had.indices[i]] = u[i];
    kern.fwht(y.data(), d);
    const double w = weight * scale_;
    for (std::uint32_t i = 0; i < d; ++i) acc[i] += w * had.signs[i] * y[i];
  }
}

std::vector<double> LinearTransform::ApplyAdjoint(std::span<const double> u) const {
  std::vector<double> out(spec_.d, 0.0);
  AccumulateAdjoint(u, 1.0, out);
  return out;
}

std::vector<double> LinearTransform::Dense() const {
  const std::uint32_t d = spec_.d;
  const std::uint32_t k = spec_.k;
  std::vector<double> rows(std::size_t{k} * d);
  std::vector<double> e(d, 0.0);
  for (std::uint32_t col = 0; col < d; ++col) {
    e[col] = 1.0;
    const std::vector<double> c = Apply(e);
    for (std::uint32_t i = 0; i < k; ++i) rows[std::size_t{i} * d + col] = c[i];
    e[col] = 0.0;
  }
  return rows;
}

std::span<const double> LinearTransform::signs() const {
  const auto* had = std::get_if<Hadamard>(&realization_);
  return had ? std::span<const double>(had->signs) : std::span<const double>();
}

std::span<const std::uint32_t> LinearTransform::indices() const {
  const auto* had = std::get_if<Hadamard>(&realization_);
  return had ? std::span<const std::uint32_t>(had->indices)
             : std::span<const std::uint32_t>();
}

}  // namespace projunit
