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

#include "hdll/bit_io.hpp"

#include <string>

#include "hdll/error.hpp"

namespace hdll {

std::vector<std::uint8_t> BitWriter::finish() {
  if (fill_ > 0) {
    acc_ = static_cast<std::uint8_t>(acc_ << (8 - fill_));
    flush_byte();
  }
  return std::move(bytes_);
}

bool BitReader::get_bit() {
  if (pos_ >= bytes_.size() * 8) fail(ErrorCode::kFormat, "coded data ends prematurely");
  const std::uint8_t byte = bytes_[pos_ >> 3];
  const bool bit = (byte >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(int count) {
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v = v << 1 | (get_bit() ? 1 : 0);
  return v;
}

void write_rice(BitWriter& out, std::uint32_t value, int k, int escape_bits) {
  if (k < 0 || k > kMaxRiceParameter) fail(ErrorCode::kInvalidArgument, "Rice parameter out of range");
  const std::uint32_t q = value >> k;
  if (q < kRiceEscapeQuotient) {
    for (std::uint32_t i = 0; i < q; ++i) out.put_bit(true);
    out.put_bit(false);
    out.put_bits(value, k);
    return;
  }
  if (escape_bits < 32 && (value >> escape_bits) != 0) {
    fail(ErrorCode::kInvalidArgument,
         "value " + std::to_string(value) + " does not fit the Rice escape field");
  }
  for (std::uint32_t i = 0; i < kRiceEscapeQuotient; ++i) out.put_bit(true);
  out.put_bits(value, escape_bits);
}

std::uint32_t read_rice(BitReader& in, int k, int escape_bits) {
  std::uint32_t q = 0;
  while (q < kRiceEscapeQuotient && in.get_bit()) ++q;
  if (q < kRiceEscapeQuotient) {
    return static_cast<std::uint32_t>(q << k | in.get_bits(k));
  }
  const auto value = static_cast<std::uint32_t>(in.get_bits(escape_bits));
  if ((value >> k) < kRiceEscapeQuotient) {
    fail(ErrorCode::kFormat, "malformed Rice escape sequence");
  }
  return value;
}

}  // namespace hdll
