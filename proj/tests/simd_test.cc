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

#include "projunit/simd.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "projunit/error.hpp"
#include "projunit/transforms.hpp"
#include "test_util.hpp"

namespace projunit {
namespace {

std::vector<double> RandomVector(std::size_t n, std::uint64_t seed) {
  Rng rng({0x51d, seed}, Domain::kData);
  std::vector<double> x(n);
  rng.FillNormal(x, 1.0);
  return x;
}

TEST(SimdTest, ActiveTableIsComplete) {
  const simd::Kernels& k = simd::Active();
  EXPECT_NE(k.fwht, nullptr);
  EXPECT_NE(k.dot, nullptr);
  EXPECT_NE(k.axpy, nullptr);
  EXPECT_NE(k.scale, nullptr);
  EXPECT_STRNE(simd::IsaName(k.isa), "");
}

TEST(SimdTest, Avx2FwhtMatchesScalarBitwise) {
  const simd::Kernels* avx = simd::Avx2Kernels();
  if (avx == nullptr) GTEST_SKIP() << "AVX2 not available";
  for (std::size_t n = 1; n <= (1u << 14); n *= 2) {
    std::vector<double> a = RandomVector(n, n);
    std::vector<double> b = a;
    simd::ScalarKernels().fwht(a.data(), n);
    avx->fwht(b.data(), n);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(a[i], b[i]) << "n=" << n << " i=" << i;
  }
}

TEST(SimdTest, Avx2ReductionsMatchScalar) {
  const simd::Kernels* avx = simd::Avx2Kernels();
  if (avx == nullptr) GTEST_SKIP() << "AVX2 not available";
  const simd::Kernels& ref = simd::ScalarKernels();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u, 4097u}) {
    const std::vector<double> x = RandomVector(n, 100 + n);
    const std::vector<double> y0 = RandomVector(n, 200 + n);
    EXPECT_NEAR(ref.dot(x.data(), y0.data(), n), avx->dot(x.data(), y0.data(), n),
                1e-12 * std::max<double>(1.0, n));
    std::vector<double> y1 = y0;
    std::vector<double> y2 = y0;
    ref.axpy(0.37, x.data(), y1.data(), n);
    avx->axpy(0.37, x.data(), y2.data(), n);
    EXPECT_LE(testing::MaxAbsDiff(y1, y2), 1e-15);
    ref.scale(-1.5, y1.data(), n);
    avx->scale(-1.5, y2.data(), n);
    EXPECT_LE(testing::MaxAbsDiff(y1, y2), 1e-15);
  }
}

TEST(FwhtTest, IsAnInvolution) {
  for (std::size_t n = 1; n <= 4096; n *= 2) {
    const std::vector<double> x = RandomVector(n, 7 * n);
    std::vector<double> y = x;
    FwhtInPlace(y);
    FwhtInPlace(y);
    EXPECT_LE(testing::MaxAbsDiff(x, y), 1e-9) << n;
  }
}

TEST(FwhtTest, IsOrthogonalAndMatchesDenseMatrix) {
  for (std::uint32_t n : {1u, 2u, 4u, 8u, 16u, 64u}) {
    const std::vector<double> h = testing::HadamardMatrix(n);
    const std::vector<double> x = RandomVector(n, 11 * n);
    const std::vector<double> fast = Fwht(x);
    EXPECT_LE(testing::MaxAbsDiff(fast, testing::MatVec(h, n, n, x)), 1e-12);
    EXPECT_NEAR(testing::Norm(fast), testing::Norm(x), 1e-12);
  }
}

TEST(FwhtTest, RejectsNonPowerOfTwo) {
  std::vector<double> x(12, 1.0);
  EXPECT_THROW(FwhtInPlace(x), Error);
}

}  // namespace
}  // namespace projunit
