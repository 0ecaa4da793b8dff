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

#ifndef HDLL_BIT_IO_HPP
#define HDLL_BIT_IO_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace hdll {

// MSB-first bit packer. finish() pads the last byte with zeros.
class BitWriter {
 public:
  void put_bit(bool bit) {
    acc_ = static_cast<std::uint8_t>(acc_ << 1 | (bit ? 1 : 0));
    if (++fill_ == 8) flush_byte();
  }

  // Writes the low `count` bits of value, most significant first.
  void put_bits(std::uint64_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1);
  }

  std::uint64_t bit_count() const { return bytes_.size() * 8 + fill_; }

  std::vector<std::uint8_t> finish();

 private:
  void flush_byte() {
    bytes_.push_back(acc_);
    acc_ = 0;
    fill_ = 0;
  }

  std::vector<std::uint8_t> bytes_;
  std::uint8_t acc_ = 0;
  int fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool get_bit();
  std::uint64_t get_bits(int count);
  std::uint64_t bits_consumed() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_ = 0;
};

inline constexpr int kMaxRiceParameter = 15;
inline constexpr std::uint32_t kRiceEscapeQuotient = 24;

// Rice code with parameter k: value >> k in unary (ones closed by a zero) then
// the k low bits. Quotients of 24 or more are sent as 24 ones followed by the
// value in `escape_bits` raw bits.
void write_rice(BitWriter& out, std::uint32_t value, int k, int escape_bits);
std::uint32_t read_rice(BitReader& in, int k, int escape_bits);

// Running-mean parameter selection: k is the smallest value with
// count << k >= sum, statistics halve every 64 symbols.
class RiceContext {
 public:
  int k() const {
    int k = 0;
    while (k < kMaxRiceParameter && (std::uint64_t{count_} << k) < sum_) ++k;
    return k;
  }

  void update(std::uint32_t value) {
    sum_ += value;
    if (++count_ == kResetInterval) {
      sum_ = (sum_ + 1) / 2;
      count_ /= 2;
    }
  }

  void write(BitWriter& out, std::uint32_t value, int escape_bits) {
    write_rice(out, value, k(), escape_bits);
    update(value);
  }

  std::uint32_t read(BitReader& in, int escape_bits) {
    const std::uint32_t value = read_rice(in, k(), escape_bits);
    update(value);
    return value;
  }

 private:
  static constexpr std::uint32_t kResetInterval = 64;
  std::uint64_t sum_ = 4;
  std::uint32_t count_ = 1;
};

// Signed to unsigned interleave: 0, -1, 1, -2, 2 ... -> 0, 1, 2, 3, 4 ...
inline std::uint32_t interleave(std::int32_t r) {
  return r >= 0 ? static_cast<std::uint32_t>(r) * 2 : static_cast<std::uint32_t>(-r) * 2 - 1;
}

inline std::int32_t deinterleave(std::uint32_t u) {
  return (u & 1) ? -static_cast<std::int32_t>((u + 1) / 2) : static_cast<std::int32_t>(u / 2);
}

}  // namespace hdll

#endif  // HDLL_BIT_IO_HPP
