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

#include "hdll/hdll.h"

#include <array>
#include <exception>
#include <new>
#include <string>

#include "hdll/container.hpp"
#include "hdll/error.hpp"
#include "hdll/radiance_io.hpp"
#include "hdll/synthetic.hpp"

struct hdll_image {
  hdll::RadianceImage image;
};

struct hdll_stream {
  hdll::DualLayerStream stream;
};

struct hdll_sdr {
  hdll::SdrImage sdr;
};

struct hdll_buffer {
  std::vector<std::uint8_t> bytes;
};

static_assert(sizeof(hdll::RgbePixel) == 4, "pixels are exposed as packed RGBE bytes");

namespace {

thread_local std::string g_last_error;

hdll_status to_status(hdll::ErrorCode code) {
  switch (code) {
    case hdll::ErrorCode::kInvalidArgument: return HDLL_ERROR_INVALID_ARGUMENT;
    case hdll::ErrorCode::kIo: return HDLL_ERROR_IO;
    case hdll::ErrorCode::kFormat: return HDLL_ERROR_FORMAT;
    case hdll::ErrorCode::kChecksum: return HDLL_ERROR_CHECKSUM;
    case hdll::ErrorCode::kRange: return HDLL_ERROR_RANGE;
    case hdll::ErrorCode::kUnsupported: return HDLL_ERROR_UNSUPPORTED;
  }
  return HDLL_ERROR_INTERNAL;
}

hdll_status report(hdll_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
hdll_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return HDLL_OK;
  } catch (const hdll::Error& e) {
    return report(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return report(HDLL_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return report(HDLL_ERROR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) hdll::fail(hdll::ErrorCode::kInvalidArgument, what);
}

hdll::EncoderConfig to_config(const hdll_encode_options& o) {
  require(o.quality >= 1 && o.quality <= 100, "quality must be in [1, 100]");
  require(o.lossy_coder >= 0 && o.lossy_coder <= 255, "bad lossy coder id");
  require(o.lossless_coder >= 0 && o.lossless_coder <= 255, "bad lossless coder id");
  hdll::EncoderConfig c;
  c.lossy.quality = static_cast<std::uint8_t>(o.quality);
  c.lossy.coder_id = static_cast<std::uint8_t>(o.lossy_coder);
  c.lossless.coder_id = static_cast<std::uint8_t>(o.lossless_coder);
  c.sigma = o.sigma;
  switch (o.mode) {
    case HDLL_MODE_NO_SLRME: c.mode = hdll::EstimatorMode::kOff; break;
    case HDLL_MODE_SLRME: c.mode = hdll::EstimatorMode::kPerExponent; break;
    case HDLL_MODE_GLOBAL_SLRME: c.mode = hdll::EstimatorMode::kGlobal; break;
    default: require(false, "unknown estimator mode");
  }
  c.tmo.key = o.tmo_key;
  c.tmo.white_point = o.tmo_white;
  c.tmo.gamma = o.tmo_gamma;
  c.tmo.epsilon = o.tmo_epsilon;
  return c;
}

std::array<std::uint64_t, 256> histogram(std::span<const std::uint8_t> e) {
  std::array<std::uint64_t, 256> h{};
  for (std::uint8_t v : e) ++h[v];
  return h;
}

}  // namespace

extern "C" {

const char* hdll_version(void) { return "1.0.0"; }

const char* hdll_status_string(hdll_status status) {
  switch (status) {
    case HDLL_OK: return "ok";
    case HDLL_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case HDLL_ERROR_IO: return "i/o error";
    case HDLL_ERROR_FORMAT: return "format error";
    case HDLL_ERROR_CHECKSUM: return "checksum mismatch";
    case HDLL_ERROR_RANGE: return "value out of range";
    case HDLL_ERROR_UNSUPPORTED: return "unsupported";
    case HDLL_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hdll_last_error(void) { return g_last_error.c_str(); }

const uint8_t* hdll_buffer_data(const hdll_buffer* buffer) {
  return buffer != nullptr ? buffer->bytes.data() : nullptr;
}

size_t hdll_buffer_size(const hdll_buffer* buffer) {
  return buffer != nullptr ? buffer->bytes.size() : 0;
}

void hdll_buffer_destroy(hdll_buffer* buffer) { delete buffer; }

hdll_status hdll_image_read_file(const char* path, hdll_image** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hdll_image{hdll::read_hdr_file(path)};
  });
}

hdll_status hdll_image_read_memory(const uint8_t* data, size_t size, hdll_image** out) {
  return guarded([&] {
    require((data != nullptr || size == 0) && out != nullptr, "null argument");
    *out = new hdll_image{hdll::parse_hdr({data, size})};
  });
}

hdll_status hdll_image_write_file(const hdll_image* image, const char* path, int rle) {
  return guarded([&] {
    require(image != nullptr && path != nullptr, "null argument");
    hdll::write_hdr_file(path, image->image, rle != 0);
  });
}

hdll_status hdll_image_write_memory(const hdll_image* image, int rle, hdll_buffer** out) {
  return guarded([&] {
    require(image != nullptr && out != nullptr, "null argument");
    *out = new hdll_buffer{hdll::write_hdr(image->image, rle != 0)};
  });
}

void hdll_image_destroy(hdll_image* image) { delete image; }

uint32_t hdll_image_width(const hdll_image* image) { return image ? image->image.width : 0; }
uint32_t hdll_image_height(const hdll_image* image) { return image ? image->image.height : 0; }

const uint8_t* hdll_image_pixels(const hdll_image* image) {
  return image ? reinterpret_cast<const uint8_t*>(image->image.pixels.data()) : nullptr;
}

size_t hdll_image_header_var_count(const hdll_image* image) {
  return image ? image->image.header_vars.size() : 0;
}

int hdll_image_equal(const hdll_image* a, const hdll_image* b) {
  return a != nullptr && b != nullptr && a->image == b->image;
}

hdll_status hdll_image_exponent_histogram(const hdll_image* image, uint64_t out[256]) {
  return guarded([&] {
    require(image != nullptr && out != nullptr, "null argument");
    std::array<std::uint64_t, 256> h{};
    for (const hdll::RgbePixel& p : image->image.pixels) ++h[p.e];
    std::copy(h.begin(), h.end(), out);
  });
}

void hdll_encode_options_default(hdll_encode_options* options) {
  if (options == nullptr) return;
  const hdll::EncoderConfig c;
  options->quality = c.lossy.quality;
  options->sigma = c.sigma;
  options->mode = HDLL_MODE_SLRME;
  options->lossy_coder = c.lossy.coder_id;
  options->lossless_coder = c.lossless.coder_id;
  options->tmo_key = c.tmo.key;
  options->tmo_white = c.tmo.white_point;
  options->tmo_gamma = c.tmo.gamma;
  options->tmo_epsilon = c.tmo.epsilon;
}

hdll_status hdll_encode(const hdll_image* image, const hdll_encode_options* options,
                        hdll_stream** out, hdll_encode_stats* stats) {
  return guarded([&] {
    require(image != nullptr && out != nullptr, "null argument");
    hdll_encode_options defaults;
    hdll_encode_options_default(&defaults);
    hdll::EncodeResult result = hdll::encode(image->image, to_config(options ? *options : defaults));
    if (stats != nullptr) {
      stats->tonemap_ms = result.stats.tonemap_ms;
      stats->base_layer_ms = result.stats.base_layer_ms;
      stats->prefilter_ms = result.stats.prefilter_ms;
      stats->fit_ms = result.stats.fit_ms;
      stats->estimate_ms = result.stats.estimate_ms;
      stats->enhancement_ms = result.stats.enhancement_ms;
      stats->total_ms = result.stats.total_ms;
      stats->sdr_digest = result.sdr_digest;
      stats->mstar_digest = result.mstar_digest;
    }
    *out = new hdll_stream{std::move(result.stream)};
  });
}

hdll_status hdll_stream_read_file(const char* path, hdll_stream** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hdll_stream{hdll::deserialize(hdll::read_file_bytes(path))};
  });
}

hdll_status hdll_stream_read_memory(const uint8_t* data, size_t size, hdll_stream** out) {
  return guarded([&] {
    require((data != nullptr || size == 0) && out != nullptr, "null argument");
    *out = new hdll_stream{hdll::deserialize({data, size})};
  });
}

hdll_status hdll_stream_write_file(const hdll_stream* stream, const char* path) {
  return guarded([&] {
    require(stream != nullptr && path != nullptr, "null argument");
    hdll::write_file_bytes(path, hdll::serialize(stream->stream));
  });
}

hdll_status hdll_stream_serialize(const hdll_stream* stream, hdll_buffer** out) {
  return guarded([&] {
    require(stream != nullptr && out != nullptr, "null argument");
    *out = new hdll_buffer{hdll::serialize(stream->stream)};
  });
}

void hdll_stream_destroy(hdll_stream* stream) { delete stream; }

hdll_status hdll_stream_info_get(const hdll_stream* stream, hdll_stream_info* info) {
  return guarded([&] {
    require(stream != nullptr && info != nullptr, "null argument");
    const hdll::DualLayerStream& s = stream->stream;
    const hdll::SectionSizes sizes = hdll::section_sizes(s);
    const hdll::Bitrate rate = hdll::bitrate_breakdown(s);
    *info = {};
    info->width = s.width;
    info->height = s.height;
    info->version = s.version;
    info->flags = s.flags;
    info->lossy_coder = s.lossy_spec.coder_id;
    info->quality = s.lossy_spec.quality;
    info->lossless_coder = s.lossless_spec.coder_id;
    info->sigma_milli = s.sigma_milli;
    info->has_enhancement = s.has_enhancement() ? 1 : 0;
    info->table_entries = s.regression_table.size();
    info->header_bytes = sizes.header;
    info->table_bytes = sizes.regression_table;
    info->base_bytes = sizes.base;
    info->exponent_bytes = sizes.exponent;
    for (int c = 0; c < 3; ++c) info->residual_bytes[c] = sizes.residual[c];
    info->total_bytes = sizes.total();
    info->bpp_total = rate.total;
    info->bpp_base = rate.base;
    info->bpp_enhancement = rate.enhancement;
    info->bpp_payloads = rate.payloads;
  });
}

hdll_status hdll_stream_table_entry(const hdll_stream* stream, size_t index,
                                    hdll_table_entry* entry) {
  return guarded([&] {
    require(stream != nullptr && entry != nullptr, "null argument");
    const auto& entries = stream->stream.regression_table.entries;
    if (index >= entries.size()) hdll::fail(hdll::ErrorCode::kRange, "table index out of range");
    const hdll::RegressionEntry& e = entries[index];
    *entry = {static_cast<uint8_t>(e.channel), e.exponent, e.a, e.b, e.count};
  });
}

hdll_status hdll_stream_exponent_histogram(const hdll_stream* stream, uint64_t out[256]) {
  return guarded([&] {
    require(stream != nullptr && out != nullptr, "null argument");
    const auto h = histogram(hdll::decode_exponent_plane(stream->stream).samples);
    std::copy(h.begin(), h.end(), out);
  });
}

hdll_status hdll_decode_hdr(const hdll_stream* stream, hdll_image** out, uint32_t* mstar_digest) {
  return guarded([&] {
    require(stream != nullptr && out != nullptr, "null argument");
    hdll::DecodeResult result = hdll::decode_hdr_with_digest(stream->stream);
    if (mstar_digest != nullptr) *mstar_digest = result.mstar_digest;
    *out = new hdll_image{std::move(result.image)};
  });
}

hdll_status hdll_decode_sdr(const hdll_stream* stream, hdll_sdr** out) {
  return guarded([&] {
    require(stream != nullptr && out != nullptr, "null argument");
    *out = new hdll_sdr{hdll::decode_sdr(stream->stream)};
  });
}

hdll_status hdll_decode_sdr_memory(const uint8_t* data, size_t size, hdll_sdr** out,
                                   size_t* bytes_touched) {
  return guarded([&] {
    require((data != nullptr || size == 0) && out != nullptr, "null argument");
    const hdll::DualLayerStream base = hdll::read_base_layer({data, size}, bytes_touched);
    *out = new hdll_sdr{hdll::decode_sdr(base)};
  });
}

hdll_status hdll_decode_sdr_file(const char* path, hdll_sdr** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    const std::vector<std::uint8_t> bytes = hdll::read_file_bytes(path);
    *out = new hdll_sdr{hdll::decode_sdr(hdll::read_base_layer(bytes))};
  });
}

uint32_t hdll_sdr_width(const hdll_sdr* sdr) { return sdr ? sdr->sdr.width : 0; }
uint32_t hdll_sdr_height(const hdll_sdr* sdr) { return sdr ? sdr->sdr.height : 0; }

void hdll_sdr_copy_rgb(const hdll_sdr* sdr, uint8_t* rgb) {
  if (sdr == nullptr || rgb == nullptr) return;
  const hdll::SdrImage& s = sdr->sdr;
  for (std::size_t i = 0; i < s.size(); ++i) {
    rgb[3 * i] = s.r[i];
    rgb[3 * i + 1] = s.g[i];
    rgb[3 * i + 2] = s.b[i];
  }
}

hdll_status hdll_sdr_write_ppm(const hdll_sdr* sdr, const char* path) {
  return guarded([&] {
    require(sdr != nullptr && path != nullptr, "null argument");
    const hdll::SdrImage& s = sdr->sdr;
    const std::string header =
        "P6\n" + std::to_string(s.width) + " " + std::to_string(s.height) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.resize(header.size() + s.size() * 3);
    hdll_sdr_copy_rgb(sdr, bytes.data() + header.size());
    hdll::write_file_bytes(path, bytes);
  });
}

void hdll_sdr_destroy(hdll_sdr* sdr) { delete sdr; }

hdll_status hdll_synthetic_corpus_write(const char* dir, uint64_t seed, uint32_t size,
                                        size_t* count) {
  return guarded([&] {
    require(dir != nullptr, "null argument");
    const auto paths = hdll::write_synthetic_corpus(dir, seed, size);
    if (count != nullptr) *count = paths.size();
  });
}

}  // extern "C"
