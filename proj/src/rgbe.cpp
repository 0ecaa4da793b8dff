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

#include "hdll/rgbe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdll/error.hpp"

namespace hdll {
namespace {

void check_component(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    fail(ErrorCode::kInvalidArgument,
         std::string("radiance component ") + name +
             " must be finite and nonnegative");
  }
}

std::uint8_t mantissa(double f, int e) {
  // floor(256 f / 2^(e-128)); ldexp is exact for these magnitudes.
  const double m = std::floor(std::ldexp(f, 8 - (e - kExponentBias)));
  return static_cast<std::uint8_t>(std::clamp(m, 0.0, 255.0));
}

}  // namespace

RgbePixel float_to_rgbe(const FloatPixel& p) {
  check_component(p.r, "r");
  check_component(p.g, "g");
  check_component(p.b, "b");
  const double max = std::max({p.r, p.g, p.b});
  if (max == 0.0) return {};

  // ceil(log2(max)) computed exactly: max = frac * 2^exp with frac in [0.5, 1).
  int exp = 0;
  const double frac = std::frexp(max, &exp);
  int e = (frac == 0.5 ? exp - 1 : exp) + kExponentBias;
  if (std::floor(std::ldexp(max, 8 - (e - kExponentBias))) >= 256.0) ++e;
  if (e < 0 || e > 255) {
    fail(ErrorCode::kRange, "radiance " + std::to_string(max) +
                                " is outside the RGBE exponent range");
  }
  return {mantissa(p.r, e), mantissa(p.g, e), mantissa(p.b, e),
          static_cast<std::uint8_t>(e)};
}

FloatPixel rgbe_to_float(RgbePixel p) {
  if (is_zero(p)) return {};
  const int shift = static_cast<int>(p.e) - kExponentBias - 8;
  return {std::ldexp(p.m_r + 0.5, shift), std::ldexp(p.m_g + 0.5, shift),
          std::ldexp(p.m_b + 0.5, shift)};
}

}  // namespace hdll
