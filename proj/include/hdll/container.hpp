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

#ifndef HDLL_CONTAINER_HPP
#define HDLL_CONTAINER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hdll/codec.hpp"
#include "hdll/estimator.hpp"
#include "hdll/image_types.hpp"
#include "hdll/radiance_io.hpp"
#include "hdll/tonemap.hpp"

namespace hdll {

inline constexpr std::array<std::uint8_t, 4> kStreamMagic = {'H', 'D', 'L', 'L'};
inline constexpr std::uint8_t kStreamVersion = 1;

inline constexpr std::uint8_t kFlagSlrme = 0x01;
inline constexpr std::uint8_t kFlagGlobalRegion = 0x02;
// channel u8, exponent u8, a f32, b f32, count u32
inline constexpr std::size_t kRegressionEntrySize = 14;

enum class EstimatorMode : std::uint8_t {
  kOff,          // M* is the decoded SDR channel itself
  kPerExponent,  // one regression per channel and exponent
  kGlobal,       // one regression per channel over the whole image
};

struct EncoderConfig {
  LossyCoderSpec lossy;
  LosslessCoderSpec lossless;
  double sigma = 1.0;  // 0 disables the restoration filter
  EstimatorMode mode = EstimatorMode::kPerExponent;
  TmoParams tmo;
};

// In-memory form of an .hll file. The enhancement sections are empty when the
// stream was truncated after the base layer.
struct DualLayerStream {
  std::uint8_t version = kStreamVersion;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t flags = 0;
  Orientation orientation = Orientation::kNegYPosX;
  LossyCoderSpec lossy_spec;
  LosslessCoderSpec lossless_spec;
  std::uint16_t sigma_milli = 0;
  std::vector<std::uint8_t> tmo_record;
  RegressionTable regression_table;
  std::vector<HeaderVar> header_vars;
  std::vector<std::uint8_t> base_payload;
  std::vector<std::uint8_t> e_payload;
  std::array<std::vector<std::uint8_t>, 3> residual_payloads;

  bool slrme() const { return (flags & kFlagSlrme) != 0; }
  bool global_region() const { return (flags & kFlagGlobalRegion) != 0; }
  double sigma() const { return sigma_milli / 1000.0; }
  bool has_enhancement() const { return !e_payload.empty(); }
  std::uint64_t pixel_count() const { return std::uint64_t{width} * height; }

  bool operator==(const DualLayerStream&) const = default;
};

struct EncodeStats {
  double tonemap_ms = 0.0;
  double base_layer_ms = 0.0;
  double prefilter_ms = 0.0;
  double fit_ms = 0.0;
  double estimate_ms = 0.0;
  double enhancement_ms = 0.0;
  double total_ms = 0.0;
};

struct EncodeResult {
  DualLayerStream stream;
  EncodeStats stats;
  std::uint32_t sdr_digest = 0;    // CRC-32 of the decoded base layer S
  std::uint32_t mstar_digest = 0;  // CRC-32 of the estimated mantissas M*
};

struct DecodeResult {
  RadianceImage image;
  std::uint32_t mstar_digest = 0;
};

// Base layer: tone map, code, decode to S. Enhancement layer: filter S,
// fit and evaluate the mantissa estimator against the decoded S, then code
// the exponent plane and the mod-256 mantissa residuals losslessly.
EncodeResult encode(const RadianceImage& hdr, const EncoderConfig& config = {});

// Base layer only; enhancement sections are never read.
SdrImage decode_sdr(const DualLayerStream& stream);

RadianceImage decode_hdr(const DualLayerStream& stream);
DecodeResult decode_hdr_with_digest(const DualLayerStream& stream);

// Exponent plane only, for inspection.
Plane8 decode_exponent_plane(const DualLayerStream& stream);

std::uint32_t mantissa_digest(const MantissaPlanes& planes);

// Residual r = (M - M*) mod 256 and its inverse (M* + r) mod 256.
constexpr std::uint8_t mantissa_residual(std::uint8_t m, std::uint8_t m_star) {
  return static_cast<std::uint8_t>(m - m_star);
}
constexpr std::uint8_t reconstruct_mantissa(std::uint8_t m_star, std::uint8_t residual) {
  return static_cast<std::uint8_t>(m_star + residual);
}

// Residual planes are coded with zero moved to 128. Small residuals of
// either sign then stay contiguous instead of straddling the 0/255 wrap,
// which the spatial predictor of the lossless coder cannot see through.
inline constexpr std::uint8_t kResidualBias = 128;
constexpr std::uint8_t center_residual(std::uint8_t r) {
  return static_cast<std::uint8_t>(r + kResidualBias);
}
constexpr std::uint8_t uncenter_residual(std::uint8_t coded) {
  return static_cast<std::uint8_t>(coded - kResidualBias);
}

std::vector<std::uint8_t> serialize(const DualLayerStream& stream);

// Accepts a complete stream or one truncated exactly after the base payload.
DualLayerStream deserialize(std::span<const std::uint8_t> bytes);

// Parses the fixed header and the base payload and stops. `bytes_touched`
// receives the furthest byte offset the reader accessed.
DualLayerStream read_base_layer(std::span<const std::uint8_t> bytes,
                                std::size_t* bytes_touched = nullptr);

struct SectionSizes {
  std::size_t header = 0;  // everything before the base payload
  std::size_t base = 0;
  std::size_t exponent = 0;
  std::array<std::size_t, 3> residual{};
  std::size_t total() const {
    return header + base + exponent + residual[0] + residual[1] + residual[2];
  }
  // Regression entries inside the header; the two-byte count is not included.
  std::size_t regression_table = 0;
};

SectionSizes section_sizes(const DualLayerStream& stream);

struct Bitrate {
  double total = 0.0;        // whole serialized stream
  double base = 0.0;         // header minus regression table, plus base payload
  double enhancement = 0.0;  // regression table, exponent and residual payloads
  double payloads = 0.0;     // coded payloads only, side information excluded
};

double bits_per_pixel(std::uint64_t bytes, std::uint64_t pixels);

// Total serialized bits over width * height.
double bitrate_bpp(const DualLayerStream& stream);
Bitrate bitrate_breakdown(const DualLayerStream& stream);

std::vector<std::uint8_t> encode_tmo_record(const TmoParams& params);
std::optional<TmoParams> decode_tmo_record(std::span<const std::uint8_t> record);

}  // namespace hdll

#endif  // HDLL_CONTAINER_HPP
