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

// Byte layout of an encoded transform (big-endian):
//
//   offset  size  field
//   0       2     magic 0x504A ("PJ")
//   2       1     version (kWireVersion; pins the Philox stream layout)
//   3       1     ensemble
//   4       1     mode: 0 = SEED, 1 = EXPLICIT, 2 = INDICES
//   5       4     d
//   9       4     k
//   13      16    seed (hi then lo)          -- SEED and EXPLICIT only
//   ..            k indices, MSB-first, ceil(log2 d) bits each, zero padded
//                 to a byte boundary          -- EXPLICIT and INDICES only
//
// INDICES mode carries only the sampled rows; it is what correlated clients
// send, the diagonal being known to the server from the published seed.

#ifndef PROJUNIT_TRANSFORM_CODEC_HPP_
#define PROJUNIT_TRANSFORM_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "projunit/transforms.hpp"

namespace projunit {

inline constexpr std::uint16_t kTransformMagic = 0x504A;
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kTransformHeaderBytes = 13;
inline constexpr std::size_t kSeedBytes = 16;

enum class EncodingMode : std::uint8_t {
  kSeed = 0,
  kExplicit = 1,
  kIndicesOnly = 2,
};

// ceil(log2 d); 0 for d == 1.
std::uint32_t IndexBitWidth(std::uint32_t d);

// Exact encoded size in bits, including the zero padding of the index block.
std::uint64_t EncodedTransformBits(EncodingMode mode, std::uint32_t d, std::uint32_t k);

std::vector<std::uint8_t> EncodeTransform(const TransformSpec& spec, EncodingMode mode);

// Decodes one transform from the front of `bytes`. When `consumed` is null the
// encoding must span the buffer exactly. SEED-mode Hadamard specs come back
// with their indices re-derived from the seed; INDICES-mode specs have a zero
// seed and no shared seed (the caller supplies it).
TransformSpec DecodeTransform(std::span<const std::uint8_t> bytes,
                              std::size_t* consumed = nullptr);

// The fields of `spec` that survive an encode/decode in `mode`.
TransformSpec TransmittedView(const TransformSpec& spec, EncodingMode mode);

}  // namespace projunit

#endif  // PROJUNIT_TRANSFORM_CODEC_HPP_
