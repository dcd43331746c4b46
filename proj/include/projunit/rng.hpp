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

// Counter-based pseudorandom streams shared by clients and server.
//
// The generator is Philox4x32-10 (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"). A 128-bit seed plus a 32-bit domain tag identify a
// stream; block i of the stream is Philox(key, {i_lo, i_hi, n0, n1}) where
// (key, n0, n1) are obtained by hashing the seed once:
//
//   {k0, k1, n0, n1} = Philox({lo32(seed.lo), hi32(seed.lo)},
//                             {domain, 0x50524E47, lo32(seed.hi), hi32(seed.hi)})
//
// Every transform, sign diagonal and randomizer draw in the library is a pure
// function of (seed, domain), which is what lets a server re-realize a client
// transform from its 128-bit seed. The algorithm is pinned by the wire-format
// version byte; changing anything here requires bumping kWireVersion.

#ifndef PROJUNIT_RNG_HPP_
#define PROJUNIT_RNG_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

namespace projunit {

struct Seed128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend constexpr auto operator<=>(const Seed128&, const Seed128&) = default;
};

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxBlock Philox4x32(PhiloxBlock ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += 0x9E3779B9u;
    key[1] += 0xBB67AE85u;
  }
  return ctr;
}

// Domain tags separating the independent streams drawn from one seed.
enum class Domain : std::uint32_t {
  kSigns = 0x5349474e,       // SIGN
  kIndices = 0x494e4458,     // INDX
  kRotation = 0x524f5441,    // ROTA
  kGaussian = 0x47415553,    // GAUS
  kRandomizer = 0x52414e44,  // RAND
  kDerive = 0x44455256,      // DERV
  kDigest = 0x44494753,      // DIGS
  kData = 0x44415441,        // DATA
};

// Key derivation: an independent seed for (master, a, b), e.g. client and
// round index. Used so every experiment replays bit-for-bit.
Seed128 DeriveSeed(const Seed128& master, std::uint64_t a, std::uint64_t b = 0);

// 64-bit digest of a seed; carried in message headers to detect a client and
// server disagreeing on the shared diagonal.
std::uint64_t SeedDigest(const Seed128& seed);

class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(const Seed128& seed, Domain domain);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return NextU64(); }

  std::uint32_t NextU32() {
    if (used_ == 4) Refill();
    return buffer_[used_++];
  }
  std::uint64_t NextU64() {
    const std::uint64_t hi = NextU32();
    return (hi << 32) | NextU32();
  }
  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  // rejection, so the result is exactly uniform.
  std::uint64_t UniformInt(std::uint64_t bound);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Standard normal from Boost.Random's ziggurat sampler driven by this
  // stream.
  double Normal();
  void FillNormal(std::span<double> out, double stddev);

 private:
  void Refill();

  PhiloxKey key_{};
  std::uint32_t nonce0_ = 0;
  std::uint32_t nonce1_ = 0;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int used_ = 4;
};

}  // namespace projunit

#endif  // PROJUNIT_RNG_HPP_
