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

#include <cmath>

#include "projunit/simd.hpp"

namespace projunit::simd::scalar {

// The first two butterfly stages are fused into a radix-4 pass; the AVX2
// kernel uses the same association so both produce identical bits.
void Fwht(double* x, std::size_t n) {
  if (n >= 4) {
    for (std::size_t i = 0; i < n; i += 4) {
      const double s0 = x[i] + x[i + 1];
      const double d0 = x[i] - x[i + 1];
      const double s1 = x[i + 2] + x[i + 3];
      const double d1 = x[i + 2] - x[i + 3];
      x[i] = s0 + s1;
      x[i + 1] = d0 + d1;
      x[i + 2] = s0 - s1;
      x[i + 3] = d0 - d1;
    }
  } else if (n == 2) {
    const double a = x[0];
    x[0] = a + x[1];
    x[1] = a - x[1];
  }
  for (std::size_t h = 4; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = x[j];
        const double b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
  if (n > 1) Scale(1.0 / std::sqrt(static_cast<double>(n)), x, n);
}

double Dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void Scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace projunit::simd::scalar
