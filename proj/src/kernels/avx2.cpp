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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "projunit/simd.hpp"

namespace projunit::simd::avx2 {

void Fwht(double* x, std::size_t n) {
  if (n < 8) {
    scalar::Fwht(x, n);
    return;
  }
  // Radix-4 first pass within each 256-bit lane group.
  for (std::size_t i = 0; i < n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);               // a b c e
    const __m256d sw = _mm256_permute_pd(v, 0b0101);        // b a e c
    const __m256d sum = _mm256_add_pd(v, sw);               // a+b . c+e .
    const __m256d diff = _mm256_sub_pd(sw, v);              // . a-b . c-e
    const __m256d pair = _mm256_blend_pd(sum, diff, 0b1010);  // s0 d0 s1 d1
    const __m256d lo = _mm256_permute2f128_pd(pair, pair, 0x00);  // s0 d0 s0 d0
    const __m256d hi = _mm256_permute2f128_pd(pair, pair, 0x11);  // s1 d1 s1 d1
    const __m256d plus = _mm256_add_pd(lo, hi);
    const __m256d minus = _mm256_sub_pd(lo, hi);
    _mm256_storeu_pd(x + i, _mm256_permute2f128_pd(plus, minus, 0x20));
  }
  for (std::size_t h = 4; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; j += 4) {
        const __m256d a = _mm256_loadu_pd(x + j);
        const __m256d b = _mm256_loadu_pd(x + j + h);
        _mm256_storeu_pd(x + j, _mm256_add_pd(a, b));
        _mm256_storeu_pd(x + j + h, _mm256_sub_pd(a, b));
      }
    }
  }
  Scale(1.0 / std::sqrt(static_cast<double>(n)), x, n);
}

double Dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void Scale(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace projunit::simd::avx2
