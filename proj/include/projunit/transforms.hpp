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

// Random projection ensembles W in R^{k x d}:
//
//   Rotation         W = sqrt(d/k) * (k rows of a Haar orthogonal matrix)
//   SRHT             W = sqrt(d/k) * S H D
//   Gaussian         W_ij ~ N(0, 1/k) i.i.d.
//   CorrelatedSRHT   W = sqrt(d/k) * S_i H D with D shared by all clients
//
// H is the orthonormal Walsh-Hadamard matrix, D a Rademacher sign diagonal and
// S a row sampler without replacement. A TransformSpec fully determines the
// realized matrix, so a spec (or its seed) is all that needs to travel.

#ifndef PROJUNIT_TRANSFORMS_HPP_
#define PROJUNIT_TRANSFORMS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "projunit/rng.hpp"

namespace projunit {

enum class Ensemble : std::uint8_t {
  kRotation = 0,
  kSrht = 1,
  kGaussian = 2,
  kCorrelatedSrht = 3,
};

const char* EnsembleName(Ensemble ensemble);
bool IsHadamardEnsemble(Ensemble ensemble);

struct TransformSpec {
  Ensemble ensemble = Ensemble::kSrht;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  Seed128 seed;
  // Present for Hadamard ensembles once sampled; sorted, distinct, each < d.
  std::optional<std::vector<std::uint32_t>> indices;
  // CorrelatedSRHT only: seed of the server-published sign diagonal.
  std::optional<Seed128> shared_seed;

  bool operator==(const TransformSpec&) const = default;
};

// Throws kDimension / kConfiguration if the spec violates its invariants.
void ValidateSpec(const TransformSpec& spec);

class LinearTransform {
 public:
  const TransformSpec& spec() const { return spec_; }
  std::uint32_t input_dim() const { return spec_.d; }
  std::uint32_t output_dim() const { return spec_.k; }
  // sqrt(d / k) for rotation and Hadamard ensembles, 1 for Gaussian.
  double scale() const { return scale_; }

  std::vector<double> Apply(std::span<const double> v) const;
  std::vector<double> ApplyAdjoint(std::span<const double> u) const;
  // acc += weight * W^T u, without allocating a d-vector per call for dense
  // realizations.
  void AccumulateAdjoint(std::span<const double> u, double weight,
                         std::span<double> acc) const;
  // Row-major k x d materialization. Intended for tests and small d.
  std::vector<double> Dense() const;

  // Hadamard ensembles: the +-1 diagonal and the sampled rows.
  std::span<const double> signs() const;
  std::span<const std::uint32_t> indices() const;

 private:
  friend LinearTransform Realize(const TransformSpec& spec);

  // Thin Q = H_0 H_1 ... H_{k-1} [I_k; 0] diag(sign), reflector j acting on
  // coordinates j..d-1 and stored as a unit vector of length d - j.
  struct Householder {
    std::vector<double> reflectors;
    std::vector<std::size_t> offsets;
    std::vector<double> column_signs;
  };
  struct DenseMatrix {
    std::vector<double> rows;  // k x d row-major, already scaled
  };
  struct Hadamard {
    std::vector<double> signs;
    std::vector<std::uint32_t> indices;
  };

  TransformSpec spec_;
  double scale_ = 1.0;
  std::variant<Householder, DenseMatrix, Hadamard> realization_;
};

LinearTransform Realize(const TransformSpec& spec);

LinearTransform SampleRotation(std::uint32_t d, std::uint32_t k, const Seed128& seed);
LinearTransform SampleSrht(std::uint32_t d, std::uint32_t k, const Seed128& seed);
LinearTransform SampleGaussian(std::uint32_t d, std::uint32_t k, const Seed128& seed);
LinearTransform SampleCorrelatedSrht(std::uint32_t d, std::uint32_t k, const Seed128& seed,
                                     const Seed128& shared_seed);

// Spec with indices filled in (for Hadamard ensembles) but nothing realized.
TransformSpec MakeSpec(Ensemble ensemble, std::uint32_t d, std::uint32_t k,
                       const Seed128& seed,
                       std::optional<Seed128> shared_seed = std::nullopt);

// Orthonormal Walsh-Hadamard transform; size must be a power of two.
std::vector<double> Fwht(std::span<const double> x);
void FwhtInPlace(std::span<double> x);

// k distinct indices from [0, d), uniformly distributed, returned sorted.
// Partial Fisher-Yates driven by the kIndices stream of `seed`.
std::vector<std::uint32_t> SampleWithoutReplacement(std::uint32_t d, std::uint32_t k,
                                                    const Seed128& seed);

// d Rademacher signs from the kSigns stream of `seed`.
std::vector<double> RademacherSigns(std::uint32_t d, const Seed128& seed);

constexpr bool IsPowerOfTwo(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }
std::uint32_t NextPowerOfTwo(std::uint32_t n);
// Zero-pads to the next power of two (identity when already one).
std::vector<double> PadToPowerOfTwo(std::span<const double> v);

}  // namespace projunit

#endif  // PROJUNIT_TRANSFORMS_HPP_
