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


// Shared helpers for the unit and acceptance tests.

#ifndef HDLL_TEST_UTIL_HPP
#define HDLL_TEST_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "hdll/error.hpp"
#include "hdll/radiance_io.hpp"

namespace hdll::test {

// Error code raised by `fn`, or nothing if it returned normally.
inline std::optional<ErrorCode> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<std::uint8_t> to_bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

// Random image with arbitrary quadruples, including non-canonical and zero
// pixels, random header lines and a random orientation.
inline RadianceImage random_image(std::mt19937_64& rng, std::uint32_t width,
                                  std::uint32_t height) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> pick(0, 9);
  RadianceImage image;
  image.width = width;
  image.height = height;
  image.orientation = static_cast<Orientation>(pick(rng) % kOrientationCount);
  image.header_vars = {{"# random", {}, false}, {"FORMAT", std::string(kRgbeFormat), true}};
  if (pick(rng) < 5) image.header_vars.push_back({"EXPOSURE", std::to_string(pick(rng)), true});
  image.pixels.resize(std::size_t{width} * height);
  for (RgbePixel& p : image.pixels) {
    switch (pick(rng)) {
      case 0: p = {}; break;
      case 1: p = {1, 1, 1, static_cast<std::uint8_t>(byte(rng))}; break;
      case 2: p = {2, 2, static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng))}; break;
      default:
        p = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
             static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng))};
    }
  }
  return image;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("hdll-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace hdll::test

#endif  // HDLL_TEST_UTIL_HPP
