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

#include "hdll/container.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "hdll/error.hpp"

namespace hdll {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::uint16_t sigma_to_milli(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0 || std::round(sigma * 1000.0) > 65535.0) {
    fail(ErrorCode::kInvalidArgument, "sigma must be in [0, 65.535]");
  }
  return static_cast<std::uint16_t>(std::round(sigma * 1000.0));
}

MantissaPlanes sdr_as_mantissas(const SdrImage& s) {
  return {s.r, s.g, s.b};
}

// Estimated mantissas for both encoder and decoder; depends only on S, the
// exponent plane and the transmitted header fields.
MantissaPlanes estimate(const DualLayerStream& stream, const SdrImage& s,
                        std::span<const std::uint8_t> e_plane) {
  if (!stream.slrme()) return sdr_as_mantissas(s);
  const FilteredSdr s_star = gaussian_prefilter(s, stream.sigma());
  return estimate_mantissa(s_star, e_plane, stream.regression_table);
}

std::string header_text(const std::vector<HeaderVar>& vars) {
  std::string text;
  for (const HeaderVar& var : vars) {
    if (var.key.find('\n') != std::string::npos || var.value.find('\n') != std::string::npos ||
        (!var.assignment && var.key.find('=') != std::string::npos)) {
      fail(ErrorCode::kInvalidArgument, "header variable cannot be stored as a text line");
    }
    text += var.key;
    if (var.assignment) text += "=" + var.value;
    text += '\n';
  }
  return text;
}

std::vector<HeaderVar> parse_header_text(std::span<const std::uint8_t> bytes) {
  std::vector<HeaderVar> vars;
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) fail(ErrorCode::kFormat, "unterminated header variable");
    const std::string_view line = text.substr(pos, nl - pos);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      vars.push_back({std::string(line), {}, false});
    } else {
      vars.push_back({std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)), true});
    }
    pos = nl + 1;
  }
  return vars;
}

void validate_header(const DualLayerStream& s) {
  if (s.version != kStreamVersion) {
    fail(ErrorCode::kUnsupported, "unsupported stream version " + std::to_string(s.version));
  }
  check_dimensions(s.width, s.height, "stream");
  if ((s.flags & ~(kFlagSlrme | kFlagGlobalRegion)) != 0) fail(ErrorCode::kFormat, "unknown stream flags");
  if (s.global_region() && !s.slrme()) fail(ErrorCode::kFormat, "global-region flag without estimator");
  if (static_cast<int>(s.orientation) >= kOrientationCount) fail(ErrorCode::kFormat, "bad orientation");
  if (s.lossy_spec.quality < 1 || s.lossy_spec.quality > 100) fail(ErrorCode::kFormat, "bad quality");
  lossy_coder(s.lossy_spec.coder_id);
  lossless_coder(s.lossless_spec.coder_id);
  if (s.slrme() != !s.regression_table.empty()) {
    fail(ErrorCode::kFormat, "estimator flag and regression table disagree");
  }
  s.regression_table.validate(s.pixel_count());
}

DualLayerStream read_header(ByteReader& in) {
  const auto magic = in.bytes(kStreamMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kStreamMagic.begin())) {
    fail(ErrorCode::kFormat, "bad magic: not an HDLL stream");
  }
  DualLayerStream s;
  s.version = in.u8();
  if (s.version != kStreamVersion) {
    fail(ErrorCode::kUnsupported, "unsupported stream version " + std::to_string(s.version));
  }
  s.width = in.u32();
  s.height = in.u32();
  s.flags = in.u8();
  s.orientation = static_cast<Orientation>(in.u8());
  s.lossy_spec.coder_id = in.u8();
  s.lossy_spec.quality = in.u8();
  s.lossless_spec.coder_id = in.u8();
  s.sigma_milli = in.u16();
  const auto tmo = in.bytes(in.u32());
  s.tmo_record.assign(tmo.begin(), tmo.end());
  const std::uint16_t entries = in.u16();
  s.regression_table.entries.reserve(entries);
  for (std::uint16_t i = 0; i < entries; ++i) {
    RegressionEntry e;
    const std::uint8_t channel = in.u8();
    if (channel > 2) fail(ErrorCode::kFormat, "bad regression channel");
    e.channel = static_cast<Channel>(channel);
    e.exponent = in.u8();
    e.a = in.f32();
    e.b = in.f32();
    e.count = in.u32();
    s.regression_table.entries.push_back(e);
  }
  s.header_vars = parse_header_text(in.bytes(in.u32()));
  validate_header(s);
  return s;
}

std::vector<std::uint8_t> read_payload(ByteReader& in, const char* what) {
  const std::size_t size = payload_size(in.rest());
  if (size == 0 || size > in.remaining()) {
    fail(ErrorCode::kFormat, std::string("length overrun in ") + what + " section");
  }
  const auto bytes = in.bytes(size);
  return {bytes.begin(), bytes.end()};
}

void check_payload_dimensions(const DualLayerStream& s, std::span<const std::uint8_t> payload,
                              const char* what) {
  if (payload_dimensions(payload) != std::pair(s.width, s.height)) {
    fail(ErrorCode::kFormat, std::string(what) + " dimensions do not match the stream header");
  }
}

}  // namespace

std::uint32_t mantissa_digest(const MantissaPlanes& planes) {
  std::uint32_t crc = 0;
  for (const auto& p : planes) crc = crc32(p, crc);
  return crc;
}

std::vector<std::uint8_t> encode_tmo_record(const TmoParams& params) {
  ByteWriter out;
  out.f64(params.key);
  out.f64(params.white_point);
  out.f64(params.gamma);
  out.f64(params.epsilon);
  return std::move(out.data());
}

std::optional<TmoParams> decode_tmo_record(std::span<const std::uint8_t> record) {
  if (record.size() != 32) return std::nullopt;
  ByteReader in(record);
  TmoParams p;
  p.key = in.f64();
  p.white_point = in.f64();
  p.gamma = in.f64();
  p.epsilon = in.f64();
  return p;
}

EncodeResult encode(const RadianceImage& hdr, const EncoderConfig& config) {
  if (hdr.width == 0 || hdr.height == 0) {
    fail(ErrorCode::kInvalidArgument, "cannot encode an empty image");
  }
  const auto start = Clock::now();
  EncodeResult result;
  DualLayerStream& s = result.stream;
  s.width = hdr.width;
  s.height = hdr.height;
  s.orientation = hdr.orientation;
  s.header_vars = hdr.header_vars;
  s.lossy_spec = config.lossy;
  s.lossless_spec = config.lossless;
  s.sigma_milli = sigma_to_milli(config.sigma);
  s.tmo_record = encode_tmo_record(config.tmo);
  if (config.mode != EstimatorMode::kOff) s.flags |= kFlagSlrme;
  if (config.mode == EstimatorMode::kGlobal) s.flags |= kFlagGlobalRegion;
  if (config.lossy.quality < 1 || config.lossy.quality > 100) {
    fail(ErrorCode::kInvalidArgument, "quality must be in [1, 100]");
  }

  const HdrPlanes planes = split_planes(hdr);

  auto t = Clock::now();
  const SdrImage sdr = tone_map(to_float_raster(hdr), hdr.width, hdr.height, config.tmo);
  result.stats.tonemap_ms = elapsed_ms(t);

  // The estimator must see exactly what the decoder will see.
  t = Clock::now();
  s.base_payload = lossy_encode(sdr, s.lossy_spec);
  const SdrImage decoded = lossy_decode(s.base_payload, s.lossy_spec);
  result.stats.base_layer_ms = elapsed_ms(t);
  result.sdr_digest = crc32(decoded);

  MantissaPlanes estimated;
  if (s.slrme()) {
    t = Clock::now();
    const FilteredSdr s_star = gaussian_prefilter(decoded, s.sigma());
    result.stats.prefilter_ms = elapsed_ms(t);

    t = Clock::now();
    s.regression_table = fit_slrme(planes, s_star,
                                   s.global_region() ? RegionMode::kGlobal : RegionMode::kPerExponent);
    result.stats.fit_ms = elapsed_ms(t);

    t = Clock::now();
    estimated = estimate_mantissa(s_star, planes.e, s.regression_table);
    result.stats.estimate_ms = elapsed_ms(t);
  } else {
    estimated = sdr_as_mantissas(decoded);
  }
  result.mstar_digest = mantissa_digest(estimated);

  t = Clock::now();
  s.e_payload = lossless_encode(Plane8(s.width, s.height, planes.e), s.lossless_spec);
  const std::array<const std::vector<std::uint8_t>*, 3> mantissas = {&planes.m_r, &planes.m_g,
                                                                     &planes.m_b};
  for (int c = 0; c < 3; ++c) {
    Plane8 residual(s.width, s.height);
    for (std::size_t i = 0; i < residual.samples.size(); ++i) {
      residual.samples[i] = center_residual(mantissa_residual((*mantissas[c])[i], estimated[c][i]));
    }
    s.residual_payloads[c] = lossless_encode(residual, s.lossless_spec);
  }
  result.stats.enhancement_ms = elapsed_ms(t);
  result.stats.total_ms = elapsed_ms(start);
  return result;
}

SdrImage decode_sdr(const DualLayerStream& stream) {
  validate_header(stream);
  check_payload_dimensions(stream, stream.base_payload, "base layer");
  return lossy_decode(stream.base_payload, stream.lossy_spec);
}

Plane8 decode_exponent_plane(const DualLayerStream& stream) {
  validate_header(stream);
  if (!stream.has_enhancement()) fail(ErrorCode::kFormat, "stream has no enhancement layer");
  check_payload_dimensions(stream, stream.e_payload, "exponent plane");
  return lossless_decode(stream.e_payload, stream.lossless_spec);
}

DecodeResult decode_hdr_with_digest(const DualLayerStream& stream) {
  const Plane8 e = decode_exponent_plane(stream);
  const SdrImage s = decode_sdr(stream);
  const MantissaPlanes estimated = estimate(stream, s, e.samples);

  HdrPlanes planes;
  planes.width = stream.width;
  planes.height = stream.height;
  planes.e = e.samples;
  const std::array<std::vector<std::uint8_t>*, 3> mantissas = {&planes.m_r, &planes.m_g,
                                                               &planes.m_b};
  for (int c = 0; c < 3; ++c) {
    check_payload_dimensions(stream, stream.residual_payloads[c], "residual plane");
    const Plane8 residual = lossless_decode(stream.residual_payloads[c], stream.lossless_spec);
    std::vector<std::uint8_t>& m = *mantissas[c];
    m.resize(residual.samples.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = reconstruct_mantissa(estimated[c][i], uncenter_residual(residual.samples[i]));
    }
  }

  DecodeResult result;
  result.image = merge_planes(planes);
  result.image.header_vars = stream.header_vars;
  result.image.orientation = stream.orientation;
  result.mstar_digest = mantissa_digest(estimated);
  return result;
}

RadianceImage decode_hdr(const DualLayerStream& stream) {
  return decode_hdr_with_digest(stream).image;
}

std::vector<std::uint8_t> serialize(const DualLayerStream& s) {
  validate_header(s);
  if (s.base_payload.empty()) fail(ErrorCode::kInvalidArgument, "stream has no base layer");
  const bool full = s.has_enhancement();
  if (full && std::any_of(s.residual_payloads.begin(), s.residual_payloads.end(),
                          [](const auto& p) { return p.empty(); })) {
    fail(ErrorCode::kInvalidArgument, "incomplete enhancement layer");
  }
  if (s.regression_table.size() > 0xffff) fail(ErrorCode::kRange, "regression table too large");

  ByteWriter out;
  out.bytes(kStreamMagic);
  out.u8(s.version);
  out.u32(s.width);
  out.u32(s.height);
  out.u8(s.flags);
  out.u8(static_cast<std::uint8_t>(s.orientation));
  out.u8(s.lossy_spec.coder_id);
  out.u8(s.lossy_spec.quality);
  out.u8(s.lossless_spec.coder_id);
  out.u16(s.sigma_milli);
  out.u32(static_cast<std::uint32_t>(s.tmo_record.size()));
  out.bytes(s.tmo_record);
  out.u16(static_cast<std::uint16_t>(s.regression_table.size()));
  for (const RegressionEntry& e : s.regression_table.entries) {
    out.u8(static_cast<std::uint8_t>(e.channel));
    out.u8(e.exponent);
    out.f32(e.a);
    out.f32(e.b);
    out.u32(e.count);
  }
  const std::string text = header_text(s.header_vars);
  out.u32(static_cast<std::uint32_t>(text.size()));
  out.bytes({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  out.bytes(s.base_payload);
  if (full) {
    out.bytes(s.e_payload);
    for (const auto& p : s.residual_payloads) out.bytes(p);
  }
  return std::move(out.data());
}

DualLayerStream read_base_layer(std::span<const std::uint8_t> bytes, std::size_t* bytes_touched) {
  ByteReader in(bytes);
  DualLayerStream s = read_header(in);
  s.base_payload = read_payload(in, "base layer");
  if (bytes_touched != nullptr) *bytes_touched = in.high_water();
  return s;
}

DualLayerStream deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  DualLayerStream s = read_header(in);
  s.base_payload = read_payload(in, "base layer");
  if (in.remaining() == 0) return s;
  s.e_payload = read_payload(in, "exponent");
  for (auto& p : s.residual_payloads) p = read_payload(in, "residual");
  if (in.remaining() != 0) fail(ErrorCode::kFormat, "trailing bytes after the last section");
  return s;
}

SectionSizes section_sizes(const DualLayerStream& stream) {
  SectionSizes sizes;
  sizes.base = stream.base_payload.size();
  sizes.exponent = stream.e_payload.size();
  for (int c = 0; c < 3; ++c) sizes.residual[c] = stream.residual_payloads[c].size();
  sizes.header = serialize(stream).size() - sizes.base - sizes.exponent - sizes.residual[0] -
                 sizes.residual[1] - sizes.residual[2];
  sizes.regression_table = stream.regression_table.size() * kRegressionEntrySize;
  return sizes;
}

double bits_per_pixel(std::uint64_t bytes, std::uint64_t pixels) {
  if (pixels == 0) fail(ErrorCode::kInvalidArgument, "bit rate of an empty image");
  return static_cast<double>(bytes) * 8.0 / static_cast<double>(pixels);
}

double bitrate_bpp(const DualLayerStream& stream) {
  return bits_per_pixel(section_sizes(stream).total(), stream.pixel_count());
}

Bitrate bitrate_breakdown(const DualLayerStream& stream) {
  const SectionSizes sizes = section_sizes(stream);
  const std::uint64_t n = stream.pixel_count();
  auto body = [](std::size_t bytes) {
    return bytes >= kPayloadHeaderSize ? bytes - kPayloadHeaderSize : 0;
  };
  // The regression table rides in the header but belongs to the enhancement layer.
  const std::size_t base = sizes.header - sizes.regression_table + sizes.base;
  Bitrate b;
  b.total = bits_per_pixel(sizes.total(), n);
  b.base = bits_per_pixel(base, n);
  b.enhancement = bits_per_pixel(sizes.total() - base, n);
  b.payloads = bits_per_pixel(body(sizes.base) + body(sizes.exponent) + body(sizes.residual[0]) +
                                  body(sizes.residual[1]) + body(sizes.residual[2]),
                              n);
  return b;
}

}  // namespace hdll
