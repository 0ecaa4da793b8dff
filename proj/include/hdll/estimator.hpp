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

#ifndef HDLL_ESTIMATOR_HPP
#define HDLL_ESTIMATOR_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hdll/image_types.hpp"
#include "hdll/radiance_io.hpp"

namespace hdll {

// Decoded SDR image after Gaussian restoration; samples stay real-valued.
struct FilteredSdr {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::array<std::vector<double>, 3> channels;

  std::size_t size() const { return std::size_t{width} * height; }
};

// 1-D normalized Gaussian taps for offsets -radius..radius with
// radius = ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

// Separable Gaussian blur with half-sample symmetric (mirror) extension. A
// sigma of 0 copies the image unchanged.
FilteredSdr gaussian_prefilter(const SdrImage& s, double sigma);

// Copies the image to real-valued planes without filtering.
FilteredSdr to_filtered(const SdrImage& s);

struct LinearFit {
  double a = 0.0;
  double b = 0.0;
};

// Running sums for one least-squares line y = a x + b. Samples are taken
// relative to the first one, which keeps the sums small when x varies
// little around a large offset.
class RegressionAccumulator {
 public:
  void add(double x, double y) {
    if (n_ == 0) {
      kx_ = x;
      ky_ = y;
    }
    ++n_;
    const double dx = x - kx_;
    const double dy = y - ky_;
    sx_ += dx;
    sy_ += dy;
    sxy_ += dx * dy;
    sxx_ += dx * dx;
  }

  std::uint64_t count() const { return n_; }

  // Closed-form solution. When the slope denominator vanishes (constant x,
  // including a single sample) returns a = 0, b = mean(y).
  LinearFit solve() const;

 private:
  std::uint64_t n_ = 0;
  double kx_ = 0.0;
  double ky_ = 0.0;
  double sx_ = 0.0;
  double sy_ = 0.0;
  double sxy_ = 0.0;
  double sxx_ = 0.0;
};

// Requires x.size() == y.size() >= 1.
LinearFit fit_region(std::span<const double> x, std::span<const std::uint8_t> y);

enum class Channel : std::uint8_t { kR = 0, kG = 1, kB = 2 };

struct RegressionEntry {
  Channel channel = Channel::kR;
  std::uint8_t exponent = 0;
  float a = 0.0f;
  float b = 0.0f;
  std::uint32_t count = 0;

  bool operator==(const RegressionEntry&) const = default;
};

// Sorted by (channel, exponent), at most one entry per pair.
struct RegressionTable {
  std::vector<RegressionEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  void validate(std::uint64_t pixel_count) const;

  bool operator==(const RegressionTable&) const = default;
};

enum class RegionMode : std::uint8_t {
  kPerExponent,  // one region per exponent value
  kGlobal,       // every exponent shares one region
};

// Fits mantissa-from-filtered-SDR lines per channel and exponent region. In
// global mode the shared line is replicated into every present exponent so
// the table layout and estimate_mantissa stay the same.
RegressionTable fit_slrme(const HdrPlanes& planes, const FilteredSdr& s_star,
                          RegionMode mode = RegionMode::kPerExponent);

using MantissaPlanes = std::array<std::vector<std::uint8_t>, 3>;

// M*(q) = clamp(round(a S*(q) + b), 0, 255) using the 32-bit parameters of
// the pixel's exponent. Ties round away from zero.
MantissaPlanes estimate_mantissa(const FilteredSdr& s_star,
                                 std::span<const std::uint8_t> e_plane,
                                 const RegressionTable& table);

}  // namespace hdll

#endif  // HDLL_ESTIMATOR_HPP
