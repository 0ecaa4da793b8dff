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

#include <zlib.h>

#include <string>

#include "byte_io.hpp"
#include "coders.hpp"

namespace hdll {
namespace {

// Uncompressed coders; they exist so the registry can be exercised with more
// than one implementation per layer.
class StoredLossyCoder final : public LossyCoder {
 public:
  std::uint8_t id() const override { return kStoredCoderId; }
  std::string_view name() const override { return "stored-rgb"; }

  std::vector<std::uint8_t> encode(const SdrImage& image, int quality,
                                   SdrImage& reconstruction) const override {
    check_dimensions(image.width, image.height, "image");
    if (quality < 1 || quality > 100) fail(ErrorCode::kInvalidArgument, "quality must be in [1, 100]");
    ByteWriter out;
    out.u32(image.width);
    out.u32(image.height);
    for (int c = 0; c < 3; ++c) out.bytes(image.channel(c));
    reconstruction = image;
    return std::move(out.data());
  }

  SdrImage decode(std::span<const std::uint8_t> body) const override {
    ByteReader in(body);
    const std::uint32_t width = in.u32();
    const std::uint32_t height = in.u32();
    check_dimensions(width, height, "image");
    SdrImage image(width, height);
    for (int c = 0; c < 3; ++c) {
      const auto bytes = in.bytes(image.size());
      image.channel(c).assign(bytes.begin(), bytes.end());
    }
    return image;
  }
};

class StoredLosslessCoder final : public LosslessCoder {
 public:
  std::uint8_t id() const override { return kStoredCoderId; }
  std::string_view name() const override { return "stored"; }

  std::vector<std::uint8_t> encode(const Plane8& plane) const override {
    check_dimensions(plane.width, plane.height, "plane");
    if (plane.samples.size() != std::size_t{plane.width} * plane.height) {
      fail(ErrorCode::kInvalidArgument, "plane sample count does not match dimensions");
    }
    ByteWriter out;
    out.u32(plane.width);
    out.u32(plane.height);
    out.bytes(plane.samples);
    return std::move(out.data());
  }

  Plane8 decode(std::span<const std::uint8_t> body) const override {
    ByteReader in(body);
    const std::uint32_t width = in.u32();
    const std::uint32_t height = in.u32();
    check_dimensions(width, height, "plane");
    const auto bytes = in.bytes(std::size_t{width} * height);
    return Plane8(width, height, {bytes.begin(), bytes.end()});
  }
};

const StoredLossyCoder kStoredLossy;
const StoredLosslessCoder kStoredLossless;

[[noreturn]] void unknown_coder(const char* layer, std::uint8_t id) {
  fail(ErrorCode::kUnsupported, std::string("unknown ") + layer + " coder id " + std::to_string(id));
}

}  // namespace

const LossyCoder& lossy_coder(std::uint8_t id) {
  switch (id) {
    case kReferenceCoderId: return reference_lossy_coder();
    case kStoredCoderId: return kStoredLossy;
    default: unknown_coder("lossy", id);
  }
}

const LosslessCoder& lossless_coder(std::uint8_t id) {
  switch (id) {
    case kReferenceCoderId: return reference_lossless_coder();
    case kStoredCoderId: return kStoredLossless;
    default: unknown_coder("lossless", id);
  }
}

std::vector<std::uint8_t> registered_lossy_coders() { return {kReferenceCoderId, kStoredCoderId}; }
std::vector<std::uint8_t> registered_lossless_coders() { return {kReferenceCoderId, kStoredCoderId}; }

std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t crc) {
  // zlib's crc32 takes a 32-bit length; feed large buffers in pieces.
  uLong value = crc;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
    value = ::crc32(value, bytes.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<std::uint32_t>(value);
}

std::uint32_t crc32(const SdrImage& image) {
  std::uint32_t crc = 0;
  for (int c = 0; c < 3; ++c) crc = crc32(image.channel(c), crc);
  return crc;
}

std::vector<std::uint8_t> frame_payload(std::uint8_t coder_id, std::uint32_t crc,
                                        std::span<const std::uint8_t> body) {
  if (body.size() > 0xffffffffu) fail(ErrorCode::kRange, "payload exceeds 4 GiB");
  ByteWriter out;
  out.u32(static_cast<std::uint32_t>(body.size()));
  out.u8(coder_id);
  out.u32(crc);
  out.bytes(body);
  return std::move(out.data());
}

std::size_t payload_size(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPayloadHeaderSize) return 0;
  ByteReader in(bytes);
  return kPayloadHeaderSize + in.u32();
}

PayloadView parse_payload(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const std::uint32_t length = in.u32();
  PayloadView view;
  view.coder_id = in.u8();
  view.crc = in.u32();
  view.body = in.bytes(length);
  return view;
}

std::pair<std::uint32_t, std::uint32_t> payload_dimensions(std::span<const std::uint8_t> payload) {
  ByteReader in(parse_payload(payload).body);
  const std::uint32_t width = in.u32();
  return {width, in.u32()};
}

std::vector<std::uint8_t> lossy_encode(const SdrImage& image, const LossyCoderSpec& spec) {
  const LossyCoder& coder = lossy_coder(spec.coder_id);
  SdrImage reconstruction;
  const std::vector<std::uint8_t> body = coder.encode(image, spec.quality, reconstruction);
  return frame_payload(coder.id(), crc32(reconstruction), body);
}

SdrImage lossy_decode(std::span<const std::uint8_t> payload, const LossyCoderSpec& spec) {
  const PayloadView view = parse_payload(payload);
  if (view.coder_id != spec.coder_id) fail(ErrorCode::kFormat, "base-layer coder id mismatch");
  SdrImage image = lossy_coder(view.coder_id).decode(view.body);
  if (crc32(image) != view.crc) fail(ErrorCode::kChecksum, "base-layer checksum mismatch");
  return image;
}

std::vector<std::uint8_t> lossless_encode(const Plane8& plane, const LosslessCoderSpec& spec) {
  const LosslessCoder& coder = lossless_coder(spec.coder_id);
  return frame_payload(coder.id(), crc32(plane.samples), coder.encode(plane));
}

Plane8 lossless_decode(std::span<const std::uint8_t> payload, const LosslessCoderSpec& spec) {
  const PayloadView view = parse_payload(payload);
  if (view.coder_id != spec.coder_id) fail(ErrorCode::kFormat, "enhancement coder id mismatch");
  Plane8 plane = lossless_coder(view.coder_id).decode(view.body);
  if (crc32(plane.samples) != view.crc) fail(ErrorCode::kChecksum, "enhancement checksum mismatch");
  return plane;
}

}  // namespace hdll
