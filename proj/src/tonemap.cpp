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

#include "hdll/tonemap.hpp"

#include <algorithm>
#include <cmath>

#include "hdll/error.hpp"

namespace hdll {
namespace {

constexpr double kLumR = 0.2126;
constexpr double kLumG = 0.7152;
constexpr double kLumB = 0.0722;

double luminance(const FloatPixel& p) { return kLumR * p.r + kLumG * p.g + kLumB * p.b; }

}  // namespace

void TmoParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(key) || !positive(gamma) || !positive(epsilon) || epsilon > 1e-3 ||
      !(auto_white() || positive(white_point))) {
    fail(ErrorCode::kInvalidArgument, "tone mapping parameters out of range");
  }
}

std::uint8_t srgb_quantize(double v) {
  if (!(v > 0.0)) return 0;  // also catches NaN
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::round(255.0 * v));
}

std::vector<FloatPixel> to_float_raster(const RadianceImage& image) {
  std::vector<FloatPixel> out(image.pixels.size());
  std::transform(image.pixels.begin(), image.pixels.end(), out.begin(), rgbe_to_float);
  return out;
}

SdrImage tone_map(std::span<const FloatPixel> hdr, std::uint32_t width,
                  std::uint32_t height, const TmoParams& params) {
  params.validate();
  if (hdr.size() != std::size_t{width} * height) {
    fail(ErrorCode::kInvalidArgument, "raster size does not match dimensions");
  }
  SdrImage out(width, height);
  if (hdr.empty()) return out;

  double log_sum = 0.0;
  double max_lum = 0.0;
  for (const FloatPixel& p : hdr) {
    if (!std::isfinite(p.r) || !std::isfinite(p.g) || !std::isfinite(p.b) || p.r < 0.0 ||
        p.g < 0.0 || p.b < 0.0) {
      fail(ErrorCode::kInvalidArgument, "tone mapping input must be finite and nonnegative");
    }
    const double lum = luminance(p);
    log_sum += std::log(params.epsilon + lum);
    max_lum = std::max(max_lum, lum);
  }
  if (max_lum == 0.0) return out;

  const double log_avg = std::exp(log_sum / static_cast<double>(hdr.size()));
  const double scale = params.key / log_avg;
  const double white = params.auto_white() ? scale * max_lum : params.white_point;
  const double inv_white2 = 1.0 / (white * white);
  const double inv_gamma = 1.0 / params.gamma;

  for (std::size_t i = 0; i < hdr.size(); ++i) {
    const FloatPixel& p = hdr[i];
    const double lum = luminance(p);
    if (lum <= 0.0) continue;
    const double l = scale * lum;
    const double ld = l * (1.0 + l * inv_white2) / (1.0 + l);
    const double ratio = ld / lum;
    out.r[i] = srgb_quantize(std::pow(p.r * ratio, inv_gamma));
    out.g[i] = srgb_quantize(std::pow(p.g * ratio, inv_gamma));
    out.b[i] = srgb_quantize(std::pow(p.b * ratio, inv_gamma));
  }
  return out;
}

}  // namespace hdll
