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

#ifndef HDLL_TONEMAP_HPP
#define HDLL_TONEMAP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hdll/image_types.hpp"
#include "hdll/radiance_io.hpp"
#include "hdll/rgbe.hpp"

namespace hdll {

// Global photographic operator parameters. A white point of 0 selects the
// maximum scaled luminance.
struct TmoParams {
  double key = 0.18;
  double white_point = 0.0;
  double gamma = 2.2;
  double epsilon = 1e-6;

  bool auto_white() const { return white_point == 0.0; }
  void validate() const;

  bool operator==(const TmoParams&) const = default;
};

// round(255 * clamp(v, 0, 1)), ties away from zero.
std::uint8_t srgb_quantize(double v);

std::vector<FloatPixel> to_float_raster(const RadianceImage& image);

// Two passes: log-average luminance over the whole raster, then the
// per-pixel curve L_d = L (1 + L / L_white^2) / (1 + L) applied to each channel
// through L_d / L_w and a 1/gamma encode. An all-black raster maps to zeros.
SdrImage tone_map(std::span<const FloatPixel> hdr, std::uint32_t width,
                  std::uint32_t height, const TmoParams& params = {});

}  // namespace hdll

#endif  // HDLL_TONEMAP_HPP
