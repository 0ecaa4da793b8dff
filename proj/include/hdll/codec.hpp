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

#ifndef HDLL_CODEC_HPP
#define HDLL_CODEC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <string_view>
#include <vector>

#include "hdll/image_types.hpp"

namespace hdll {

inline constexpr std::uint8_t kReferenceCoderId = 1;
inline constexpr std::uint8_t kStoredCoderId = 2;

struct LossyCoderSpec {
  std::uint8_t coder_id = kReferenceCoderId;
  std::uint8_t quality = 85;

  bool operator==(const LossyCoderSpec&) const = default;
};

struct LosslessCoderSpec {
  std::uint8_t coder_id = kReferenceCoderId;

  bool operator==(const LosslessCoderSpec&) const = default;
};

// Every coder body starts with the u32 LE width and height of the image it
// carries; containers use this to reject mismatched payloads before decoding.
//
// Base-layer coder. encode() also returns the exact image decode() will
// produce so the payload checksum can cover the reconstruction.
class LossyCoder {
 public:
  virtual ~LossyCoder() = default;
  virtual std::uint8_t id() const = 0;
  virtual std::string_view name() const = 0;
  virtual std::vector<std::uint8_t> encode(const SdrImage& image, int quality,
                                           SdrImage& reconstruction) const = 0;
  virtual SdrImage decode(std::span<const std::uint8_t> body) const = 0;
};

// Enhancement-layer coder; decode(encode(p)) == p for every plane.
class LosslessCoder {
 public:
  virtual ~LosslessCoder() = default;
  virtual std::uint8_t id() const = 0;
  virtual std::string_view name() const = 0;
  virtual std::vector<std::uint8_t> encode(const Plane8& plane) const = 0;
  virtual Plane8 decode(std::span<const std::uint8_t> body) const = 0;
};

// Throw kUnsupported for ids that are not registered.
const LossyCoder& lossy_coder(std::uint8_t id);
const LosslessCoder& lossless_coder(std::uint8_t id);
std::vector<std::uint8_t> registered_lossy_coders();
std::vector<std::uint8_t> registered_lossless_coders();

std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t crc = 0);
std::uint32_t crc32(const SdrImage& image);

// Payload framing: body length (u32 LE), coder id (u8), CRC-32 of the raw
// decoded samples (u32 LE), body.
inline constexpr std::size_t kPayloadHeaderSize = 9;

struct PayloadView {
  std::uint8_t coder_id = 0;
  std::uint32_t crc = 0;
  std::span<const std::uint8_t> body;
};

std::vector<std::uint8_t> frame_payload(std::uint8_t coder_id, std::uint32_t crc,
                                        std::span<const std::uint8_t> body);

// Parses one payload at the start of `bytes`; the payload must fit.
PayloadView parse_payload(std::span<const std::uint8_t> bytes);

// Full framed size of the payload starting at `bytes`, or 0 when even the
// framing header is incomplete.
std::size_t payload_size(std::span<const std::uint8_t> bytes);

// Width and height stored at the front of a framed payload's body.
std::pair<std::uint32_t, std::uint32_t> payload_dimensions(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> lossy_encode(const SdrImage& image, const LossyCoderSpec& spec);
SdrImage lossy_decode(std::span<const std::uint8_t> payload, const LossyCoderSpec& spec);

std::vector<std::uint8_t> lossless_encode(const Plane8& plane, const LosslessCoderSpec& spec);
Plane8 lossless_decode(std::span<const std::uint8_t> payload, const LosslessCoderSpec& spec);

namespace detail {

// Quantization law shared by the reference base-layer coder: scale is
// 5000/Q below 50 and 200 - 2Q otherwise; entries round and clamp to [1, 255].
std::array<std::uint16_t, 64> scaled_quant_table(const std::array<std::uint16_t, 64>& base,
                                                 int quality);
extern const std::array<std::uint16_t, 64> kLumaQuant;
extern const std::array<std::uint16_t, 64> kChromaQuant;
extern const std::array<std::uint8_t, 64> kZigzag;

// MED prediction from left (a), above (b) and above-left (c).
inline int med_predict(int a, int b, int c) {
  const int lo = a < b ? a : b;
  const int hi = a < b ? b : a;
  if (c >= hi) return lo;
  if (c <= lo) return hi;
  return a + b - c;
}

}  // namespace detail

}  // namespace hdll

#endif  // HDLL_CODEC_HPP
