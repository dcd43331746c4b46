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

#include "projunit/transform_codec.hpp"

#include <string>

#include "projunit/error.hpp"
#include "projunit/wire_io.hpp"

namespace projunit {

std::uint32_t IndexBitWidth(std::uint32_t d) {
  std::uint32_t bits = 0;
  while ((std::uint64_t{1} << bits) < d) ++bits;
  return bits;
}

std::uint64_t EncodedTransformBits(EncodingMode mode, std::uint32_t d, std::uint32_t k) {
  std::uint64_t bits = 8 * kTransformHeaderBytes;
  if (mode != EncodingMode::kIndicesOnly) bits += 8 * kSeedBytes;
  if (mode != EncodingMode::kSeed) {
    const std::uint64_t index_bits = std::uint64_t{k} * IndexBitWidth(d);
    bits += (index_bits + 7) / 8 * 8;
  }
  return bits;
}

std::vector<std::uint8_t> EncodeTransform(const TransformSpec& spec, EncodingMode mode) {
  ValidateSpec(spec);
  const bool has_indices = mode != EncodingMode::kSeed;
  if (has_indices) {
    Require(IsHadamardEnsemble(spec.ensemble), ErrorCode::kConfiguration,
            "explicit index encoding needs a Hadamard ensemble");
  }
  Require(mode != EncodingMode::kIndicesOnly || spec.ensemble == Ensemble::kCorrelatedSrht,
          ErrorCode::kConfiguration, "indices-only encoding needs correlated SRHT");

  ByteWriter out;
  out.PutU16(kTransformMagic);
  out.PutU8(kWireVersion);
  out.PutU8(static_cast<std::uint8_t>(spec.ensemble));
  out.PutU8(static_cast<std::uint8_t>(mode));
  out.PutU32(spec.d);
  out.PutU32(spec.k);
  if (mode != EncodingMode::kIndicesOnly) {
    out.PutU64(spec.seed.hi);
    out.PutU64(spec.seed.lo);
  }
  if (has_indices) {
    const std::vector<std::uint32_t> sampled =
        spec.indices ? *spec.indices : SampleWithoutReplacement(spec.d, spec.k, spec.seed);
    BitWriter bits;
    const std::uint32_t width = IndexBitWidth(spec.d);
    for (std::uint32_t index : sampled) bits.Put(index, width);
    out.PutBytes(bits.Finish());
  }
  return out.Take();
}

TransformSpec DecodeTransform(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  ByteReader in(bytes);
  Require(in.GetU16() == kTransformMagic, ErrorCode::kDecode, "bad transform magic");
  const std::uint8_t version = in.GetU8();
  if (version != kWireVersion) {
    Fail(ErrorCode::kDecode, "unsupported transform version " + std::to_string(version));
  }
  const std::uint8_t ensemble = in.GetU8();
  Require(ensemble <= static_cast<std::uint8_t>(Ensemble::kCorrelatedSrht), ErrorCode::kDecode,
          "unknown ensemble tag");
  const std::uint8_t mode_tag = in.GetU8();
  Require(mode_tag <= static_cast<std::uint8_t>(EncodingMode::kIndicesOnly),
          ErrorCode::kDecode, "unknown encoding mode");
  const auto mode = static_cast<EncodingMode>(mode_tag);

  TransformSpec spec;
  spec.ensemble = static_cast<Ensemble>(ensemble);
  spec.d = in.GetU32();
  spec.k = in.GetU32();
  Require(spec.d >= 1 && spec.k >= 1 && spec.k <= spec.d, ErrorCode::kDecode,
          "transform header has invalid dimensions");
  Require(!IsHadamardEnsemble(spec.ensemble) || IsPowerOfTwo(spec.d), ErrorCode::kDecode,
          "Hadamard transform with non power-of-two d");
  if (mode != EncodingMode::kSeed) {
    Require(IsHadamardEnsemble(spec.ensemble), ErrorCode::kDecode,
            "index payload on a non-Hadamard ensemble");
  }
  if (mode == EncodingMode::kIndicesOnly) {
    Require(spec.ensemble == Ensemble::kCorrelatedSrht, ErrorCode::kDecode,
            "indices-only payload on an uncorrelated ensemble");
  } else {
    spec.seed.hi = in.GetU64();
    spec.seed.lo = in.GetU64();
  }
  if (mode == EncodingMode::kSeed) {
    if (IsHadamardEnsemble(spec.ensemble)) {
      spec.indices = SampleWithoutReplacement(spec.d, spec.k, spec.seed);
    }
  } else {
    const std::uint32_t width = IndexBitWidth(spec.d);
    const std::size_t nbytes = (std::uint64_t{spec.k} * width + 7) / 8;
    BitReader bits(in.GetBytes(nbytes));
    std::vector<std::uint32_t> indices(spec.k);
    for (auto& index : indices) {
      index = static_cast<std::uint32_t>(bits.Get(width));
      Require(index < spec.d, ErrorCode::kDecode, "row index out of range");
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
      Require(indices[i] > indices[i - 1], ErrorCode::kDecode,
              "row indices must be sorted and distinct");
    }
    spec.indices = std::move(indices);
  }
  if (consumed != nullptr) {
    *consumed = in.position();
  } else {
    Require(in.remaining() == 0, ErrorCode::kDecode, "trailing bytes after transform");
  }
  return spec;
}

TransformSpec TransmittedView(const TransformSpec& spec, EncodingMode mode) {
  TransformSpec view = spec;
  view.shared_seed.reset();
  if (mode == EncodingMode::kIndicesOnly) view.seed = {};
  if (IsHadamardEnsemble(spec.ensemble) && !view.indices) {
    view.indices = SampleWithoutReplacement(spec.d, spec.k, spec.seed);
  }
  return view;
}

}  // namespace projunit
