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

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2/FMA version; the active table is chosen once at startup
// from CPUID. Setting PROJUNIT_ISA=scalar forces the reference kernels.

#ifndef PROJUNIT_SIMD_HPP_
#define PROJUNIT_SIMD_HPP_

#include <cstddef>

namespace projunit::simd {

enum class Isa { kScalar, kAvx2 };

struct Kernels {
  Isa isa;
  // Orthonormal Walsh-Hadamard transform in place; n must be a power of two.
  void (*fwht)(double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

const Kernels& ScalarKernels();
// Null when the AVX2 variants were not compiled in or the CPU lacks AVX2+FMA.
const Kernels* Avx2Kernels();
const Kernels& Active();
const char* IsaName(Isa isa);

namespace scalar {
void Fwht(double* x, std::size_t n);
double Dot(const double* a, const double* b, std::size_t n);
void Axpy(double alpha, const double* x, double* y, std::size_t n);
void Scale(double alpha, double* x, std::size_t n);
}  // namespace scalar

#if defined(PROJUNIT_HAVE_AVX2)
namespace avx2 {
void Fwht(double* x, std::size_t n);
double Dot(const double* a, const double* b, std::size_t n);
void Axpy(double alpha, const double* x, double* y, std::size_t n);
void Scale(double alpha, double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace projunit::simd

#endif  // PROJUNIT_SIMD_HPP_
