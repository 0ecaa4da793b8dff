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

/*
 * C interface to the dual-layer lossless Radiance codec.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an hdll_status;
 * on failure hdll_last_error() describes the problem for the calling thread.
 */
#ifndef HDLL_HDLL_H
#define HDLL_HDLL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HDLL_BUILDING_LIBRARY)
#define HDLL_API __declspec(dllexport)
#else
#define HDLL_API __declspec(dllimport)
#endif
#else
#define HDLL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hdll_status {
  HDLL_OK = 0,
  HDLL_ERROR_INVALID_ARGUMENT = 1,
  HDLL_ERROR_IO = 2,
  HDLL_ERROR_FORMAT = 3,
  HDLL_ERROR_CHECKSUM = 4,
  HDLL_ERROR_RANGE = 5,
  HDLL_ERROR_UNSUPPORTED = 6,
  HDLL_ERROR_INTERNAL = 7
} hdll_status;

typedef enum hdll_mode {
  HDLL_MODE_NO_SLRME = 0,     /* residuals against the decoded SDR image */
  HDLL_MODE_SLRME = 1,        /* per-exponent regression estimator */
  HDLL_MODE_GLOBAL_SLRME = 2  /* one regression per channel */
} hdll_mode;

typedef struct hdll_image hdll_image;   /* Radiance image */
typedef struct hdll_stream hdll_stream; /* dual-layer stream */
typedef struct hdll_sdr hdll_sdr;       /* 8-bit RGB image */
typedef struct hdll_buffer hdll_buffer; /* owned byte buffer */

typedef struct hdll_encode_options {
  int quality;          /* base-layer quality, 1..100 */
  double sigma;         /* restoration filter sigma, 0 disables */
  hdll_mode mode;
  int lossy_coder;      /* base-layer coder id */
  int lossless_coder;   /* enhancement coder id */
  double tmo_key;
  double tmo_white;     /* 0 selects the maximum scaled luminance */
  double tmo_gamma;
  double tmo_epsilon;
} hdll_encode_options;

typedef struct hdll_encode_stats {
  double tonemap_ms;
  double base_layer_ms;
  double prefilter_ms;
  double fit_ms;
  double estimate_ms;
  double enhancement_ms;
  double total_ms;
  uint32_t sdr_digest;   /* CRC-32 of the decoded base layer */
  uint32_t mstar_digest; /* CRC-32 of the estimated mantissa planes */
} hdll_encode_stats;

typedef struct hdll_stream_info {
  uint32_t width;
  uint32_t height;
  uint8_t version;
  uint8_t flags;
  uint8_t lossy_coder;
  uint8_t quality;
  uint8_t lossless_coder;
  uint16_t sigma_milli;
  int has_enhancement;
  size_t table_entries;
  size_t header_bytes;
  size_t table_bytes; /* regression entries, included in header_bytes */
  size_t base_bytes;
  size_t exponent_bytes;
  size_t residual_bytes[3];
  size_t total_bytes;
  double bpp_total;
  double bpp_base;
  double bpp_enhancement;
  double bpp_payloads; /* coded payload bodies only */
} hdll_stream_info;

typedef struct hdll_table_entry {
  uint8_t channel; /* 0 = R, 1 = G, 2 = B */
  uint8_t exponent;
  float a;
  float b;
  uint32_t count;
} hdll_table_entry;

HDLL_API const char* hdll_version(void);
HDLL_API const char* hdll_status_string(hdll_status status);
/* Message for the last failure on this thread; empty when none. */
HDLL_API const char* hdll_last_error(void);

/* Buffers */
HDLL_API const uint8_t* hdll_buffer_data(const hdll_buffer* buffer);
HDLL_API size_t hdll_buffer_size(const hdll_buffer* buffer);
HDLL_API void hdll_buffer_destroy(hdll_buffer* buffer);

/* Radiance images */
HDLL_API hdll_status hdll_image_read_file(const char* path, hdll_image** out);
HDLL_API hdll_status hdll_image_read_memory(const uint8_t* data, size_t size, hdll_image** out);
HDLL_API hdll_status hdll_image_write_file(const hdll_image* image, const char* path, int rle);
HDLL_API hdll_status hdll_image_write_memory(const hdll_image* image, int rle, hdll_buffer** out);
HDLL_API void hdll_image_destroy(hdll_image* image);
HDLL_API uint32_t hdll_image_width(const hdll_image* image);
HDLL_API uint32_t hdll_image_height(const hdll_image* image);
/* Interleaved R, G, B, E bytes, width * height * 4 of them. */
HDLL_API const uint8_t* hdll_image_pixels(const hdll_image* image);
HDLL_API size_t hdll_image_header_var_count(const hdll_image* image);
/* Pixels, dimensions, orientation and header lines all equal. */
HDLL_API int hdll_image_equal(const hdll_image* a, const hdll_image* b);
HDLL_API hdll_status hdll_image_exponent_histogram(const hdll_image* image, uint64_t histogram[256]);

/* Encoding */
HDLL_API void hdll_encode_options_default(hdll_encode_options* options);
HDLL_API hdll_status hdll_encode(const hdll_image* image, const hdll_encode_options* options,
                                 hdll_stream** out, hdll_encode_stats* stats);

/* Streams */
HDLL_API hdll_status hdll_stream_read_file(const char* path, hdll_stream** out);
HDLL_API hdll_status hdll_stream_read_memory(const uint8_t* data, size_t size, hdll_stream** out);
HDLL_API hdll_status hdll_stream_write_file(const hdll_stream* stream, const char* path);
HDLL_API hdll_status hdll_stream_serialize(const hdll_stream* stream, hdll_buffer** out);
HDLL_API void hdll_stream_destroy(hdll_stream* stream);
HDLL_API hdll_status hdll_stream_info_get(const hdll_stream* stream, hdll_stream_info* info);
HDLL_API hdll_status hdll_stream_table_entry(const hdll_stream* stream, size_t index,
                                             hdll_table_entry* entry);
HDLL_API hdll_status hdll_stream_exponent_histogram(const hdll_stream* stream,
                                                    uint64_t histogram[256]);

/* Decoding */
HDLL_API hdll_status hdll_decode_hdr(const hdll_stream* stream, hdll_image** out,
                                     uint32_t* mstar_digest);
HDLL_API hdll_status hdll_decode_sdr(const hdll_stream* stream, hdll_sdr** out);
/* Parses only the stream header and base layer of an in-memory .hll file;
 * bytes_touched (optional) receives how far into the buffer the reader got. */
HDLL_API hdll_status hdll_decode_sdr_memory(const uint8_t* data, size_t size, hdll_sdr** out,
                                            size_t* bytes_touched);
HDLL_API hdll_status hdll_decode_sdr_file(const char* path, hdll_sdr** out);

/* SDR images */
HDLL_API uint32_t hdll_sdr_width(const hdll_sdr* sdr);
HDLL_API uint32_t hdll_sdr_height(const hdll_sdr* sdr);
/* Copies interleaved RGB bytes into `rgb`, which must hold width*height*3. */
HDLL_API void hdll_sdr_copy_rgb(const hdll_sdr* sdr, uint8_t* rgb);
HDLL_API hdll_status hdll_sdr_write_ppm(const hdll_sdr* sdr, const char* path);
HDLL_API void hdll_sdr_destroy(hdll_sdr* sdr);

/* Synthetic test corpus: writes <name>.hdr files into dir. */
HDLL_API hdll_status hdll_synthetic_corpus_write(const char* dir, uint64_t seed, uint32_t size,
                                                 size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* HDLL_HDLL_H */
