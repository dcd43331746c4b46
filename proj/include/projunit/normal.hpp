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

#ifndef PROJUNIT_NORMAL_HPP_
#define PROJUNIT_NORMAL_HPP_

namespace projunit {

// Standard normal density.
double NormalPdf(double x);
// Standard normal CDF, via erfc so the lower tail keeps full relative precision.
double NormalCdf(double x);
// Upper tail 1 - Phi(x), accurate for large positive x.
double NormalSf(double x);
// Inverse CDF for p in (0, 1). Wichura's AS241 (PPND16) rational
// approximation, ~1e-16 relative accuracy; throws kDomain outside (0, 1).
double NormalQuantile(double p);

}  // namespace projunit

#endif  // PROJUNIT_NORMAL_HPP_
