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


#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "hdll/radiance_io.hpp"
#include "test_util.hpp"

using namespace hdll;
using test::error_of;
using test::to_bytes;

namespace {

using Bytes = std::vector<std::uint8_t>;

Bytes header(const std::string& resolution, const std::string& extra = "") {
  return to_bytes("#?RADIANCE\n" + extra + "FORMAT=32-bit_rle_rgbe\n\n" + resolution + "\n");
}

Bytes concat(Bytes a, const Bytes& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Stand-alone decoder for one per-component run-length scanline, written
// from the format description: 2 2 hi lo, then four component streams of
// (count > 128: run of count-128 copies of the next byte) or
// (count <= 128: count literal bytes).
std::vector<RgbePixel> decode_component_scanline(const Bytes& b, std::size_t width) {
  std::vector<std::array<std::uint8_t, 4>> q(width);
  std::size_t pos = 4;
  for (int c = 0; c < 4; ++c) {
    std::size_t x = 0;
    while (x < width) {
      const int code = b.at(pos++);
      if (code > 128) {
        const std::uint8_t v = b.at(pos++);
        for (int i = 0; i < code - 128; ++i) q.at(x++)[c] = v;
      } else {
        for (int i = 0; i < code; ++i) q.at(x++)[c] = b.at(pos++);
      }
    }
  }
  std::vector<RgbePixel> out;
  for (const auto& v : q) out.push_back({v[0], v[1], v[2], v[3]});
  return out;
}

// Builds a component-RLE scanline from random runs and literal groups.
Bytes random_component_scanline(std::mt19937_64& rng, std::size_t width) {
  Bytes b = {2, 2, static_cast<std::uint8_t>(width >> 8), static_cast<std::uint8_t>(width & 0xff)};
  std::uniform_int_distribution<int> byte(0, 255);
  for (int c = 0; c < 4; ++c) {
    std::size_t x = 0;
    while (x < width) {
      const std::size_t left = width - x;
      const std::size_t n = std::min<std::size_t>(left, 1 + byte(rng) % 127);
      if (byte(rng) & 1) {
        b.push_back(static_cast<std::uint8_t>(128 + n));
        b.push_back(static_cast<std::uint8_t>(byte(rng)));
      } else {
        b.push_back(static_cast<std::uint8_t>(n));
        for (std::size_t i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(byte(rng)));
      }
      x += n;
    }
  }
  return b;
}

RadianceImage constant_image(std::uint32_t w, std::uint32_t h, RgbePixel p) {
  RadianceImage image;
  image.width = w;
  image.height = h;
  image.pixels.assign(std::size_t{w} * h, p);
  image.header_vars = {{"FORMAT", std::string(kRgbeFormat), true}};
  return image;
}

}  // namespace

TEST_CASE("smallest legal file") {
  const Bytes file = concat(header("-Y 1 +X 1"), {128, 128, 128, 129});
  const RadianceImage image = parse_hdr(file);
  CHECK(image.width == 1);
  CHECK(image.height == 1);
  REQUIRE(image.pixels.size() == 1);
  CHECK(image.pixels[0] == RgbePixel{128, 128, 128, 129});
  REQUIRE(image.header_vars.size() == 1);
  CHECK(image.header_vars[0] == HeaderVar{"FORMAT", "32-bit_rle_rgbe", true});
  CHECK(parse_hdr(write_hdr(image)) == image);
  CHECK(parse_hdr(write_hdr(image, false)) == image);
}

TEST_CASE("component run-length scanline with a single run per component") {
  const Bytes line = {2, 2, 0, 8, 0x88, 0x40, 0x88, 0x40, 0x88, 0x40, 0x88, 0x40};
  const std::vector<RgbePixel> expected(8, RgbePixel{64, 64, 64, 64});
  CHECK(decode_component_scanline(line, 8) == expected);
  CHECK(parse_hdr(concat(header("-Y 1 +X 8"), line)).pixels == expected);
}

TEST_CASE("component run-length scanlines agree with the stand-alone decoder") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t width = 8 + rng() % 600;
    const std::size_t height = 1 + rng() % 4;
    Bytes file = header("-Y " + std::to_string(height) + " +X " + std::to_string(width));
    std::vector<RgbePixel> expected;
    for (std::size_t y = 0; y < height; ++y) {
      const Bytes line = random_component_scanline(rng, width);
      const auto decoded = decode_component_scanline(line, width);
      expected.insert(expected.end(), decoded.begin(), decoded.end());
      file = concat(file, line);
    }
    const RadianceImage image = parse_hdr(file);
    REQUIRE(image.pixels == expected);
    REQUIRE(parse_hdr(write_hdr(image)) == image);
  }
}

TEST_CASE("header lines pass through verbatim") {
  const Bytes file = concat(
      to_bytes("#?RADIANCE\n# made by hand\nEXPOSURE=2.0\nFORMAT=32-bit_rle_rgbe\nSOFTWARE=x y\n\n"
               "-Y 1 +X 2\n"),
      {10, 20, 30, 129, 40, 50, 60, 130});
  const RadianceImage image = parse_hdr(file);
  REQUIRE(image.header_vars.size() == 4);
  CHECK(image.header_vars[0] == HeaderVar{"# made by hand", "", false});
  CHECK(image.header_vars[1] == HeaderVar{"EXPOSURE", "2.0", true});
  CHECK(image.header_vars[3] == HeaderVar{"SOFTWARE", "x y", true});
  CHECK(parse_hdr(write_hdr(image)) == image);
  // Flat writing of a narrow image reproduces the input byte for byte.
  CHECK(write_hdr(image, false) == file);
}

TEST_CASE("run-length output is shorter than flat output for a constant row") {
  const RadianceImage image = constant_image(16, 1, {100, 50, 25, 130});
  const Bytes rle = write_hdr(image, true);
  const Bytes flat = write_hdr(image, false);
  CHECK(rle.size() < flat.size());
  CHECK(parse_hdr(rle) == image);
  CHECK(parse_hdr(flat) == image);
}

TEST_CASE("flat pixel data occupies 32 bits per pixel") {
  const RadianceImage image = constant_image(5, 3, {100, 50, 25, 130});
  const Bytes flat = write_hdr(image, false);
  const std::string text(flat.begin(), flat.end());
  const std::size_t data = text.find("-Y 3 +X 5\n") + 10;
  CHECK((flat.size() - data) * 8 == 32u * 15);
}

TEST_CASE("old-style and component run-length data decode identically") {
  // 10 pixels: A, run of 4 more A, B, run of 3 more B, C.
  const RgbePixel a{200, 100, 50, 131};
  const RgbePixel b{130, 0, 7, 120};
  const RgbePixel c{255, 255, 255, 140};
  const Bytes old_line = {200, 100, 50, 131, 1, 1, 1, 4, 130, 0, 7, 120, 1, 1, 1, 3, 255, 255, 255, 140};
  RadianceImage expected;
  expected.width = 10;
  expected.height = 1;
  expected.header_vars = {{"FORMAT", "32-bit_rle_rgbe", true}};
  expected.pixels = {a, a, a, a, a, b, b, b, b, c};
  const RadianceImage from_old = parse_hdr(concat(header("-Y 1 +X 10"), old_line));
  CHECK(from_old == expected);
  CHECK(parse_hdr(write_hdr(expected, true)) == from_old);

  // Chained markers multiply by 256: 1 + 2 + 1*256 = 259 copies.
  Bytes chained = {9, 9, 9, 129, 1, 1, 1, 2, 1, 1, 1, 1};
  const RadianceImage long_run = parse_hdr(concat(header("-Y 1 +X 259"), chained));
  CHECK(long_run.pixels == std::vector<RgbePixel>(259, RgbePixel{9, 9, 9, 129}));
}

TEST_CASE("all eight orientations are kept") {
  std::mt19937_64 rng(3);
  for (int o = 0; o < kOrientationCount; ++o) {
    RadianceImage image = test::random_image(rng, 9, 4);
    image.orientation = static_cast<Orientation>(o);
    const Bytes bytes = write_hdr(image);
    const RadianceImage back = parse_hdr(bytes);
    CHECK(back == image);
  }
  const RadianceImage swapped = parse_hdr(concat(header("+X 2 -Y 1"), {1, 2, 3, 4, 5, 6, 7, 8}));
  CHECK(swapped.orientation == Orientation::kPosXNegY);
  CHECK(swapped.height == 2);
  CHECK(swapped.width == 1);
}

TEST_CASE("write and parse are inverse on random images") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const auto w = static_cast<std::uint32_t>(1 + rng() % 70);
    const auto h = static_cast<std::uint32_t>(1 + rng() % 5);
    const RadianceImage image = test::random_image(rng, w, h);
    const bool marker = std::any_of(image.pixels.begin(), image.pixels.end(), [](RgbePixel p) {
      return p.m_r == 1 && p.m_g == 1 && p.m_b == 1;
    });
    if (marker && w < 8) {
      // A (1,1,1,n) pixel needs run-length form, which narrow rows lack.
      CHECK(error_of([&] { write_hdr(image, true); }) == ErrorCode::kUnsupported);
      CHECK(error_of([&] { write_hdr(image, false); }) == ErrorCode::kUnsupported);
      continue;
    }
    REQUIRE(parse_hdr(write_hdr(image, true)) == image);
    REQUIRE(parse_hdr(write_hdr(image, false)) == image);
  }
  const RadianceImage wide = constant_image(40000, 1, {1, 1, 1, 5});
  CHECK(error_of([&] { write_hdr(wide); }) == ErrorCode::kUnsupported);
}

TEST_CASE("parse then write then parse is stable on random byte streams") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t width = 8 + rng() % 200;
    Bytes file = header("-Y 2 +X " + std::to_string(width));
    file = concat(file, random_component_scanline(rng, width));
    file = concat(file, random_component_scanline(rng, width));
    const RadianceImage first = parse_hdr(file);
    REQUIRE(parse_hdr(write_hdr(first, true)) == first);
  }
}

TEST_CASE("malformed files are rejected") {
  CHECK(error_of([] { parse_hdr(to_bytes("#?JPEG\n\n-Y 1 +X 1\n\x01\x02\x03\x04")); }) ==
        ErrorCode::kFormat);
  CHECK(error_of([] { parse_hdr(concat(header("-Y 1 +X 2"), {128, 128, 128, 129})); }) ==
        ErrorCode::kFormat);
  CHECK(error_of([] { parse_hdr(concat(header("-Y 1 +Q 1"), {128, 128, 128, 129})); }) ==
        ErrorCode::kFormat);
  CHECK(error_of([] { parse_hdr(concat(header("-Y 1"), {128, 128, 128, 129})); }) ==
        ErrorCode::kFormat);
  CHECK(error_of([] { parse_hdr(to_bytes("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n")); }) ==
        ErrorCode::kFormat);
  // A run longer than the scanline.
  CHECK(error_of([] {
          parse_hdr(concat(header("-Y 1 +X 8"), {2, 2, 0, 8, 0x89, 1, 0x88, 1, 0x88, 1, 0x88, 1}));
        }) == ErrorCode::kFormat);
  CHECK(error_of([] {
          parse_hdr(concat(header("-Y 1 +X 3"), {5, 5, 5, 130, 1, 1, 1, 9}));
        }) == ErrorCode::kFormat);
  // Declared scanline length differs from the resolution line.
  CHECK(error_of([] {
          parse_hdr(concat(header("-Y 1 +X 8"), {2, 2, 0, 9, 0x88, 1, 0x88, 1, 0x88, 1, 0x88, 1}));
        }) == ErrorCode::kFormat);
  CHECK(error_of([] {
          parse_hdr(to_bytes("#?RADIANCE\nFORMAT=32-bit_rle_xyze\n\n-Y 1 +X 1\n\x80\x80\x80\x81"));
        }) == ErrorCode::kUnsupported);
  CHECK(error_of([] { write_hdr(RadianceImage{}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("planes scatter and gather pixels") {
  RadianceImage image;
  image.width = 2;
  image.height = 1;
  image.pixels = {{10, 20, 30, 129}, {0, 0, 0, 0}};
  const HdrPlanes planes = split_planes(image);
  CHECK(planes.m_r == Bytes{10, 0});
  CHECK(planes.m_g == Bytes{20, 0});
  CHECK(planes.m_b == Bytes{30, 0});
  CHECK(planes.e == Bytes{129, 0});
  CHECK_FALSE(planes.canonical);  // 30 < 128
  CHECK(merge_planes(planes).pixels == image.pixels);

  const HdrPlanes zero = split_planes(constant_image(3, 2, {}));
  for (const Bytes* p : {&zero.m_r, &zero.m_g, &zero.m_b, &zero.e}) CHECK(*p == Bytes(6, 0));
  CHECK(zero.canonical);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const RadianceImage r = test::random_image(rng, 1 + rng() % 30, 1 + rng() % 30);
    REQUIRE(merge_planes(split_planes(r)).pixels == r.pixels);
  }

  HdrPlanes bad = planes;
  bad.e.pop_back();
  CHECK(error_of([&] { merge_planes(bad); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("files round-trip through disk") {
  test::TempDir dir("radiance");
  std::mt19937_64 rng(17);
  const RadianceImage image = test::random_image(rng, 33, 7);
  write_hdr_file(dir.path() / "a.hdr", image);
  CHECK(read_hdr_file(dir.path() / "a.hdr") == image);
  CHECK(error_of([&] { read_hdr_file(dir.path() / "missing.hdr"); }) == ErrorCode::kIo);
}
