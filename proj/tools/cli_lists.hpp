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

// Command-line list parsing shared by the tools.

#ifndef PROJUNIT_TOOLS_CLI_LISTS_HPP_
#define PROJUNIT_TOOLS_CLI_LISTS_HPP_

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace projunit::tools {

inline std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// Accepts "a,b,c", a doubling range "a..b", and a geometric run written as
// "a,b,...,z" (ratio b/a).
inline std::vector<std::uint32_t> ParseDims(const std::string& text) {
  std::vector<std::uint32_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos &&
                                         text.find(',') == std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (lo == 0 || hi < lo) throw std::invalid_argument("bad range " + text);
    for (std::uint64_t d = lo; d <= hi; d *= 2) out.push_back(static_cast<std::uint32_t>(d));
    return out;
  }
  const std::vector<std::string> parts = SplitCommas(text);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == "...") {
      if (i < 2 || i + 1 >= parts.size()) throw std::invalid_argument("bad run " + text);
      const std::uint64_t a = out[out.size() - 2];
      const std::uint64_t b = out.back();
      const std::uint64_t last = std::stoull(parts[i + 1]);
      if (b <= a || b % a != 0) throw std::invalid_argument("run must be geometric: " + text);
      for (std::uint64_t x = b * (b / a); x < last; x *= b / a) {
        out.push_back(static_cast<std::uint32_t>(x));
      }
      continue;
    }
    out.push_back(static_cast<std::uint32_t>(std::stoull(parts[i])));
  }
  return out;
}

inline std::vector<double> ParseDoubles(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : SplitCommas(text)) out.push_back(std::stod(part));
  return out;
}

}  // namespace projunit::tools

#endif  // PROJUNIT_TOOLS_CLI_LISTS_HPP_
