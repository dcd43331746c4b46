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

#include <vector>

#include <gtest/gtest.h>

#include "projunit/error.hpp"

namespace projunit {
namespace {

TEST(IndexBitWidthTest, CeilLog2) {
  EXPECT_EQ(IndexBitWidth(1), 0u);
  EXPECT_EQ(IndexBitWidth(2), 1u);
  EXPECT_EQ(IndexBitWidth(16), 4u);
  EXPECT_EQ(IndexBitWidth(17), 5u);
  EXPECT_EQ(IndexBitWidth(1u << 20), 20u);
}

TEST(TransformCodecTest, RoundTripsEveryModeAndEnsemble) {
  struct Case {
    Ensemble ensemble;
    EncodingMode mode;
  };
  const Case cases[] = {
      {Ensemble::kRotation, EncodingMode::kSeed},      {Ensemble::kGaussian, EncodingMode::kSeed},
      {Ensemble::kSrht, EncodingMode::kSeed},          {Ensemble::kSrht, EncodingMode::kExplicit},
      {Ensemble::kCorrelatedSrht, EncodingMode::kSeed}, {Ensemble::kCorrelatedSrht, EncodingMode::kExplicit},
      {Ensemble::kCorrelatedSrht, EncodingMode::kIndicesOnly},
  };
  for (const Case& c : cases) {
    for (std::uint32_t t = 0; t < 50; ++t) {
      const std::uint32_t d = 1u << (1 + t % 12);
      const std::uint32_t k = 1 + (t * 7919) % d;
      std::optional<Seed128> shared;
      if (c.ensemble == Ensemble::kCorrelatedSrht) shared = Seed128{99, t};
      const TransformSpec spec = MakeSpec(c.ensemble, d, k, {t, 1000 + t}, shared);
      const std::vector<std::uint8_t> bytes = EncodeTransform(spec, c.mode);
      EXPECT_EQ(bytes.size() * 8, EncodedTransformBits(c.mode, d, k));
      EXPECT_EQ(DecodeTransform(bytes), TransmittedView(spec, c.mode));
    }
  }
}

TEST(TransformCodecTest, ExplicitSrhtSizeAtMillionDimensions) {
  const TransformSpec spec = MakeSpec(Ensemble::kSrht, 1u << 20, 1000, {1, 2});
  const std::vector<std::uint8_t> bytes = EncodeTransform(spec, EncodingMode::kExplicit);
  // 13-byte header + 16-byte seed + 1000 * 20 index bits.
  EXPECT_EQ(bytes.size(), 13u + 16u + 2500u);
  EXPECT_EQ(EncodedTransformBits(EncodingMode::kExplicit, 1u << 20, 1000), 20232u);
}

TEST(TransformCodecTest, IndicesOnlyIsOneSeedShorterThanExplicit) {
  EXPECT_EQ(EncodedTransformBits(EncodingMode::kExplicit, 1024, 64) -
                EncodedTransformBits(EncodingMode::kIndicesOnly, 1024, 64),
            128u);
}

TEST(TransformCodecTest, RejectsUnsupportedModes) {
  EXPECT_THROW(EncodeTransform(MakeSpec(Ensemble::kRotation, 8, 2, {}), EncodingMode::kExplicit),
               Error);
  EXPECT_THROW(EncodeTransform(MakeSpec(Ensemble::kSrht, 8, 2, {}), EncodingMode::kIndicesOnly),
               Error);
}

TEST(TransformCodecTest, RejectsMalformedBytes) {
  const TransformSpec spec = MakeSpec(Ensemble::kSrht, 16, 4, {3, 4});
  const std::vector<std::uint8_t> good = EncodeTransform(spec, EncodingMode::kExplicit);
  auto expect_decode_error = [](std::vector<std::uint8_t> bytes) {
    try {
      DecodeTransform(bytes);
      ADD_FAILURE() << "decode accepted malformed bytes";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDecode);
    }
  };
  auto bad = good;
  bad[0] ^= 1;
  expect_decode_error(bad);
  bad = good;
  bad[2] = 9;
  expect_decode_error(bad);
  bad = good;
  bad[3] = 7;
  expect_decode_error(bad);
  bad = good;
  bad[4] = 3;
  expect_decode_error(bad);
  bad = good;
  bad.pop_back();
  expect_decode_error(bad);
  bad = good;
  bad.push_back(0);
  expect_decode_error(bad);
  bad = good;
  bad[8] = 12;  // d = 12, not a power of two
  expect_decode_error(bad);
  bad = good;
  bad[29] = 0xff;  // first two indices 15, 15: not increasing
  expect_decode_error(bad);
}

TEST(TransformCodecTest, ConsumedReportsPrefixLength) {
  const TransformSpec spec = MakeSpec(Ensemble::kSrht, 64, 5, {3, 4});
  std::vector<std::uint8_t> bytes = EncodeTransform(spec, EncodingMode::kExplicit);
  const std::size_t len = bytes.size();
  bytes.push_back(0xab);
  std::size_t used = 0;
  DecodeTransform(bytes, &used);
  EXPECT_EQ(used, len);
}

TEST(TransformCodecTest, RandomBytesOnlyRaiseErrors) {
  Rng rng({1, 1}, Domain::kData);
  for (int t = 0; t < 5000; ++t) {
    std::vector<std::uint8_t> bytes(rng.UniformInt(64));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.NextU32());
    if (bytes.size() >= 3 && t % 2 == 0) {
      bytes[0] = 0x50;
      bytes[1] = 0x4A;
      bytes[2] = kWireVersion;
    }
    try {
      DecodeTransform(bytes);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace projunit
