/*
 * Copyright 2026 The hdll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HDLL_SRC_BYTE_IO_HPP
#define HDLL_SRC_BYTE_IO_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "hdll/error.hpp"

namespace hdll {

// Little-endian serialization helpers.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void bytes(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }

  std::vector<std::uint8_t>& data() { return bytes_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> bytes_;
};

// Bounds-checked reader. high_water() is the furthest offset ever touched,
// which lets callers prove which sections a decode path consumed.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(get(8)); }

  std::span<const std::uint8_t> bytes(std::size_t n) {
    require(n);
    auto out = bytes_.subspan(pos_, n);
    advance(n);
    return out;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t high_water() const { return high_water_; }
  void skip(std::size_t n) {
    require(n);
    advance(n);
  }

 private:
  void require(std::size_t n) const {
    if (n > remaining()) fail(ErrorCode::kFormat, "length overrun: data ends prematurely");
  }

  void advance(std::size_t n) {
    pos_ += n;
    high_water_ = std::max(high_water_, pos_);
  }

  std::uint64_t get(int n) {
    require(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    advance(static_cast<std::size_t>(n));
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::size_t high_water_ = 0;
};

inline void check_dimensions(std::uint64_t width, std::uint64_t height, const char* what) {
  if (width == 0 || height == 0 || width * height > (std::uint64_t{1} << 31)) {
    fail(ErrorCode::kFormat, std::string("bad ") + what + " dimensions");
  }
}

}  // namespace hdll

#endif  // HDLL_SRC_BYTE_IO_HPP
