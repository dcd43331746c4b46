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

#include "projunit/error.hpp"

namespace projunit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension:
      return "dimension";
    case ErrorCode::kConfiguration:
      return "configuration";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kDecode:
      return "decode";
    case ErrorCode::kDegenerateProjection:
      return "degenerate projection";
    case ErrorCode::kMismatch:
      return "mismatch";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kDivergence:
      return "divergence";
  }
  return "unknown";
}

}  // namespace projunit
