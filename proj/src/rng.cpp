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

#include "projunit/rng.hpp"

#include <boost/random/normal_distribution.hpp>

namespace projunit {
namespace {

constexpr std::uint32_t kStreamTag = 0x50524E47u;  // PRNG

inline std::uint32_t Lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t Hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }
inline std::uint64_t Join(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

inline PhiloxBlock HashSeed(const Seed128& seed, std::uint32_t tag) {
  return Philox4x32({tag, kStreamTag, Lo32(seed.hi), Hi32(seed.hi)},
                    {Lo32(seed.lo), Hi32(seed.lo)});
}

}  // namespace

Seed128 DeriveSeed(const Seed128& master, std::uint64_t a, std::uint64_t b) {
  const PhiloxBlock k = HashSeed(master, static_cast<std::uint32_t>(Domain::kDerive));
  const PhiloxBlock out = Philox4x32({Lo32(a), Hi32(a), Lo32(b) ^ k[2], Hi32(b) ^ k[3]},
                                     {k[0], k[1]});
  return {Join(out[0], out[1]), Join(out[2], out[3])};
}

std::uint64_t SeedDigest(const Seed128& seed) {
  const PhiloxBlock h = HashSeed(seed, static_cast<std::uint32_t>(Domain::kDigest));
  return Join(h[0], h[1]);
}

Rng::Rng(const Seed128& seed, Domain domain) {
  const PhiloxBlock h = HashSeed(seed, static_cast<std::uint32_t>(domain));
  key_ = {h[0], h[1]};
  nonce0_ = h[2];
  nonce1_ = h[3];
}

void Rng::Refill() {
  buffer_ = Philox4x32({Lo32(block_), Hi32(block_), nonce0_, nonce1_}, key_);
  ++block_;
  used_ = 0;
}

double Rng::Uniform() {
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  // 64x64 -> 128 multiply; reject the biased low region.
  std::uint64_t x = NextU64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = NextU64();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::Normal() { return boost::random::normal_distribution<double>()(*this); }

void Rng::FillNormal(std::span<double> out, double stddev) {
  boost::random::normal_distribution<double> normal(0.0, stddev);
  for (double& x : out) x = normal(*this);
}

}  // namespace projunit
