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

#include <cstdlib>
#include <string_view>

#include "projunit/simd.hpp"

namespace projunit::simd {
namespace {

const Kernels kScalar{Isa::kScalar, &scalar::Fwht, &scalar::Dot, &scalar::Axpy,
                      &scalar::Scale};

#if defined(PROJUNIT_HAVE_AVX2)
const Kernels kAvx2{Isa::kAvx2, &avx2::Fwht, &avx2::Dot, &avx2::Axpy, &avx2::Scale};

bool CpuHasAvx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Kernels& Select() {
  const char* forced = std::getenv("PROJUNIT_ISA");
  if (forced != nullptr && std::string_view(forced) == "scalar") return kScalar;
  if (const Kernels* k = Avx2Kernels()) return *k;
  return kScalar;
}

}  // namespace

const Kernels& ScalarKernels() { return kScalar; }

const Kernels* Avx2Kernels() {
#if defined(PROJUNIT_HAVE_AVX2)
  static const bool available = CpuHasAvx2();
  return available ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& Active() {
  static const Kernels& active = Select();
  return active;
}

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace projunit::simd
