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

#ifndef HDLL_RGBE_HPP
#define HDLL_RGBE_HPP

#include <compare>
#include <cstdint>

namespace hdll {

// Nonnegative radiance triple.
struct FloatPixel {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  bool operator==(const FloatPixel&) const = default;
};

// Three 8-bit mantissas sharing one 8-bit exponent, as stored in a Radiance
// file.
struct RgbePixel {
  std::uint8_t m_r = 0;
  std::uint8_t m_g = 0;
  std::uint8_t m_b = 0;
  std::uint8_t e = 0;

  auto operator<=>(const RgbePixel&) const = default;
};

inline constexpr int kExponentBias = 128;

inline bool is_zero(RgbePixel p) {
  return p.m_r == 0 && p.m_g == 0 && p.m_b == 0 && p.e == 0;
}

// Canonical pixels have their largest mantissa in [128, 255]; only those (and
// the zero pixel) survive float_to_rgbe(rgbe_to_float(p)) unchanged.
inline bool is_canonical(RgbePixel p) {
  std::uint8_t m = p.m_r;
  if (p.m_g > m) m = p.m_g;
  if (p.m_b > m) m = p.m_b;
  return m >= 128;
}

// E = ceil(log2(max) + 128), M = floor(256 f / 2^(E-128)). When the largest
// component is an exact power of two the mantissa would be 256, so E is bumped
// by one. All-zero input maps to (0,0,0,0). Throws kRange when E leaves
// [0, 255] and kInvalidArgument on negative or non-finite input.
RgbePixel float_to_rgbe(const FloatPixel& p);

// f = (M + 0.5) / 256 * 2^(E-128); the zero pixel decodes to exactly zero.
FloatPixel rgbe_to_float(RgbePixel p);

inline RgbePixel rgbe_roundtrip(RgbePixel p) {
  return float_to_rgbe(rgbe_to_float(p));
}

}  // namespace hdll

#endif  // HDLL_RGBE_HPP
