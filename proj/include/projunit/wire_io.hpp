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

// Big-endian byte and MSB-first bit packing used by the wire formats.

#ifndef PROJUNIT_WIRE_IO_HPP_
#define PROJUNIT_WIRE_IO_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "projunit/error.hpp"

namespace projunit {

class ByteWriter {
 public:
  void PutU8(std::uint8_t v) { buf_.push_back(v); }
  void PutU16(std::uint16_t v) { PutBig(v, 2); }
  void PutU32(std::uint32_t v) { PutBig(v, 4); }
  void PutU64(std::uint64_t v) { PutBig(v, 8); }
  void PutF32(float v) { PutU32(std::bit_cast<std::uint32_t>(v)); }
  void PutBytes(std::span<const std::uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }
  std::vector<std::uint8_t> Take() { return std::move(buf_); }

 private:
  void PutBig(std::uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t GetU8() { return static_cast<std::uint8_t>(GetBig(1)); }
  std::uint16_t GetU16() { return static_cast<std::uint16_t>(GetBig(2)); }
  std::uint32_t GetU32() { return static_cast<std::uint32_t>(GetBig(4)); }
  std::uint64_t GetU64() { return GetBig(8); }
  float GetF32() { return std::bit_cast<float>(GetU32()); }
  std::span<const std::uint8_t> GetBytes(std::size_t n) {
    Need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(std::size_t n) const {
    Require(bytes_.size() - pos_ >= n, ErrorCode::kDecode, "truncated payload");
  }
  std::uint64_t GetBig(int n) {
    Need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class BitWriter {
 public:
  void Put(std::uint64_t value, std::uint32_t width) {
    for (std::uint32_t b = width; b-- > 0;) {
      if (nbits_ % 8 == 0) buf_.push_back(0);
      if ((value >> b) & 1u) buf_.back() |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
      ++nbits_;
    }
  }
  std::vector<std::uint8_t> Finish() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
  std::uint64_t nbits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint64_t Get(std::uint32_t width) {
    std::uint64_t v = 0;
    for (std::uint32_t b = 0; b < width; ++b) {
      const std::size_t byte = pos_ / 8;
      Require(byte < bytes_.size(), ErrorCode::kDecode, "truncated bit stream");
      v = (v << 1) | ((bytes_[byte] >> (7 - pos_ % 8)) & 1u);
      ++pos_;
    }
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_ = 0;
};

}  // namespace projunit

#endif  // PROJUNIT_WIRE_IO_HPP_
