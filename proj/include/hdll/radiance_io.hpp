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

#ifndef HDLL_RADIANCE_IO_HPP
#define HDLL_RADIANCE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdll/rgbe.hpp"

namespace hdll {

// The eight Radiance resolution-line axis orders. The first axis names the
// scanline direction; pixels are always kept in file order.
enum class Orientation : std::uint8_t {
  kNegYPosX = 0,  // -Y H +X W (standard)
  kNegYNegX,
  kPosYPosX,
  kPosYNegX,
  kPosXNegY,
  kNegXNegY,
  kPosXPosY,
  kNegXPosY,
};

inline constexpr int kOrientationCount = 8;

// A header line. Lines of the form KEY=VALUE are split; anything else
// (comments, bare words) keeps the whole line in `key` with assignment unset.
struct HeaderVar {
  std::string key;
  std::string value;
  bool assignment = true;

  bool operator==(const HeaderVar&) const = default;
};

struct RadianceImage {
  std::uint32_t width = 0;   // scanline length
  std::uint32_t height = 0;  // scanline count
  std::vector<RgbePixel> pixels;
  std::vector<HeaderVar> header_vars;
  Orientation orientation = Orientation::kNegYPosX;

  bool operator==(const RadianceImage&) const = default;
};

struct HdrPlanes {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> m_r;
  std::vector<std::uint8_t> m_g;
  std::vector<std::uint8_t> m_b;
  std::vector<std::uint8_t> e;
  // Every pixel is canonical or the zero pixel.
  bool canonical = false;

  bool operator==(const HdrPlanes&) const = default;
};

inline constexpr std::string_view kRgbeFormat = "32-bit_rle_rgbe";

std::string_view orientation_axes(Orientation o, int index);

// Reads flat, old-style run-length and new-style (per component) run-length
// scanlines, mixed freely.
RadianceImage parse_hdr(std::span<const std::uint8_t> bytes);

// Header vars are written verbatim; nothing is added. With `rle` set, scanlines
// whose width is in [8, 32767] use new-style run-length encoding. Flat output
// cannot represent a (1,1,1,n) pixel, so such scanlines are promoted to
// run-length form when the width allows it and rejected otherwise.
std::vector<std::uint8_t> write_hdr(const RadianceImage& image, bool rle = true);

RadianceImage read_hdr_file(const std::filesystem::path& path);
void write_hdr_file(const std::filesystem::path& path, const RadianceImage& image,
                    bool rle = true);

HdrPlanes split_planes(const RadianceImage& image);

// Header vars and orientation are left at their defaults.
RadianceImage merge_planes(const HdrPlanes& planes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes);

}  // namespace hdll

#endif  // HDLL_RADIANCE_IO_HPP
