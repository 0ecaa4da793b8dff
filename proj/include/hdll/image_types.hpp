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

#ifndef HDLL_IMAGE_TYPES_HPP
#define HDLL_IMAGE_TYPES_HPP

#include <cstdint>
#include <vector>

namespace hdll {

// 8-bit RGB standard-dynamic-range image, planar.
struct SdrImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> r;
  std::vector<std::uint8_t> g;
  std::vector<std::uint8_t> b;

  SdrImage() = default;
  SdrImage(std::uint32_t w, std::uint32_t h)
      : width(w), height(h), r(std::size_t{w} * h), g(std::size_t{w} * h),
        b(std::size_t{w} * h) {}

  std::size_t size() const { return std::size_t{width} * height; }
  const std::vector<std::uint8_t>& channel(int c) const { return c == 0 ? r : c == 1 ? g : b; }
  std::vector<std::uint8_t>& channel(int c) { return c == 0 ? r : c == 1 ? g : b; }

  bool operator==(const SdrImage&) const = default;
};

// Single 8-bit plane: exponents, residuals or one SDR channel.
struct Plane8 {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> samples;

  Plane8() = default;
  Plane8(std::uint32_t w, std::uint32_t h) : width(w), height(h), samples(std::size_t{w} * h) {}
  Plane8(std::uint32_t w, std::uint32_t h, std::vector<std::uint8_t> s)
      : width(w), height(h), samples(std::move(s)) {}

  bool operator==(const Plane8&) const = default;
};

}  // namespace hdll

#endif  // HDLL_IMAGE_TYPES_HPP
