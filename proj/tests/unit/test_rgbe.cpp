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


#include <cmath>
#include <random>

#include "doctest.h"
#include "hdll/rgbe.hpp"
#include "test_util.hpp"

using namespace hdll;

namespace {

// Smallest exponent whose mantissas all fit in 8 bits, found by search.
RgbePixel search_rgbe(const FloatPixel& f) {
  if (f.r == 0 && f.g == 0 && f.b == 0) return {};
  for (int e = 0; e <= 255; ++e) {
    const auto m = [&](double v) { return std::floor(std::ldexp(v, 136 - e)); };
    if (m(f.r) <= 255 && m(f.g) <= 255 && m(f.b) <= 255) {
      return {static_cast<std::uint8_t>(m(f.r)), static_cast<std::uint8_t>(m(f.g)),
              static_cast<std::uint8_t>(m(f.b)), static_cast<std::uint8_t>(e)};
    }
  }
  return {0, 0, 0, 255};
}

RgbePixel px(int r, int g, int b, int e) {
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b),
          static_cast<std::uint8_t>(e)};
}

}  // namespace

TEST_CASE("zero radiance maps to the zero pixel and back") {
  CHECK(float_to_rgbe({0, 0, 0}) == px(0, 0, 0, 0));
  CHECK(rgbe_to_float(px(0, 0, 0, 0)) == FloatPixel{0, 0, 0});
  CHECK(rgbe_roundtrip(px(0, 0, 0, 0)) == px(0, 0, 0, 0));
}

TEST_CASE("forward conversion of reference values") {
  CHECK(float_to_rgbe({0.9, 0.45, 0.225}) == px(230, 115, 57, 128));
  CHECK(search_rgbe({0.9, 0.45, 0.225}) == px(230, 115, 57, 128));

  // Exact power of two: a mantissa of 256 would overflow, so E moves up.
  CHECK(float_to_rgbe({1.0, 0.5, 0.25}) == px(128, 64, 32, 129));
  CHECK(search_rgbe({1.0, 0.5, 0.25}) == px(128, 64, 32, 129));
}

TEST_CASE("inverse conversion of reference values") {
  CHECK(rgbe_to_float(px(128, 64, 32, 129)) == FloatPixel{1.00390625, 0.50390625, 0.25390625});
  const FloatPixel top = rgbe_to_float(px(255, 255, 255, 255));
  const double expected = 255.5 / 256.0 * std::ldexp(1.0, 127);
  CHECK(top == FloatPixel{expected, expected, expected});
}

TEST_CASE("forward conversion matches the exponent search on random radiance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(0.0, 1.0);
  std::uniform_int_distribution<int> octave(-100, 100);
  for (int i = 0; i < 200000; ++i) {
    const int o = octave(rng);
    FloatPixel f{std::ldexp(mant(rng), o), std::ldexp(mant(rng), o), std::ldexp(mant(rng), o)};
    if (i % 7 == 0) f.g = 0.0;
    if (i % 11 == 0) f.r = std::ldexp(1.0, o);  // power-of-two maxima
    const RgbePixel got = float_to_rgbe(f);
    REQUIRE(got == search_rgbe(f));
    REQUIRE((is_zero(got) || is_canonical(got)));
  }
}

TEST_CASE("canonical pixels round-trip exactly") {
  CHECK(rgbe_roundtrip(px(200, 10, 0, 130)) == px(200, 10, 0, 130));
  for (int e : {1, 64, 128, 200, 254}) {
    for (int m_max = 128; m_max <= 255; ++m_max) {
      for (int m_other = 0; m_other <= 255; ++m_other) {
        for (const RgbePixel p : {px(m_max, m_other, m_other, e), px(m_other, m_max, m_other, e),
                                  px(m_other, m_other, m_max, e)}) {
          if (!is_canonical(p)) continue;
          REQUIRE(rgbe_roundtrip(p) == p);
        }
      }
    }
  }
}

TEST_CASE("inverse conversion is strictly monotone") {
  for (int e = 1; e <= 255; e += 7) {
    for (int m = 0; m < 255; ++m) {
      REQUIRE(rgbe_to_float(px(m, 0, 0, e)).r < rgbe_to_float(px(m + 1, 0, 0, e)).r);
    }
  }
  for (int m = 1; m <= 255; m += 5) {
    for (int e = 0; e < 255; ++e) {
      REQUIRE(rgbe_to_float(px(m, m, m, e)).g < rgbe_to_float(px(m, m, m, e + 1)).g);
    }
  }
}

TEST_CASE("invalid radiance is rejected") {
  using test::error_of;
  const double nan = std::nan("");
  const double inf = HUGE_VAL;
  CHECK(error_of([] { float_to_rgbe({-1.0, 0, 0}); }) == ErrorCode::kInvalidArgument);
  CHECK(error_of([&] { float_to_rgbe({0, nan, 0}); }) == ErrorCode::kInvalidArgument);
  CHECK(error_of([&] { float_to_rgbe({0, 0, inf}); }) == ErrorCode::kInvalidArgument);
  CHECK(error_of([] { float_to_rgbe({1e60, 0, 0}); }) == ErrorCode::kRange);
  CHECK(error_of([] { float_to_rgbe({1e-60, 0, 0}); }) == ErrorCode::kRange);
  // Largest and smallest representable exponents.
  CHECK(float_to_rgbe({std::ldexp(0.75, 127), 0, 0}).e == 255);
  CHECK(float_to_rgbe({std::ldexp(0.75, -128), 0, 0}).e == 0);
}
