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

// Reference base-layer coder: BT.601 full-range YCbCr at 4:4:4, 8x8 DCT,
// quality-scaled quantization, zigzag run/level symbols and adaptive Rice
// codes from the shared entropy backend.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "byte_io.hpp"
#include "coders.hpp"
#include "hdll/bit_io.hpp"

namespace hdll {
namespace detail {

const std::array<std::uint16_t, 64> kLumaQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

const std::array<std::uint16_t, 64> kChromaQuant = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,
};

const std::array<std::uint8_t, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
};

std::array<std::uint16_t, 64> scaled_quant_table(const std::array<std::uint16_t, 64>& base,
                                                 int quality) {
  if (quality < 1 || quality > 100) fail(ErrorCode::kInvalidArgument, "quality must be in [1, 100]");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<std::uint16_t, 64> out{};
  for (std::size_t i = 0; i < 64; ++i) {
    const int v = (base[i] * scale + 50) / 100;
    out[i] = static_cast<std::uint16_t>(std::clamp(v, 1, 255));
  }
  return out;
}

}  // namespace detail

namespace {

constexpr int kCoefficientEscapeBits = 16;

using Block = std::array<double, 64>;
using Coefficients = std::array<std::int32_t, 64>;
using QuantTable = std::array<std::uint16_t, 64>;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

class Dct8 {
 public:
  Dct8() {
    for (int u = 0; u < 8; ++u) {
      const double scale = u == 0 ? std::sqrt(0.125) : 0.5;
      for (int x = 0; x < 8; ++x) {
        basis_[u * 8 + x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
  }

  Block forward(const Block& in) const { return transform(in, false); }
  Block inverse(const Block& in) const { return transform(in, true); }

 private:
  // Separable 2-D transform: rows first, then columns.
  Block transform(const Block& in, bool inverse) const {
    auto coef = [&](int freq, int pos) { return basis_[freq * 8 + pos]; };
    Block tmp{};
    Block out{};
    for (int r = 0; r < 8; ++r) {
      for (int k = 0; k < 8; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
          acc += (inverse ? coef(i, k) : coef(k, i)) * in[r * 8 + i];
        }
        tmp[r * 8 + k] = acc;
      }
    }
    for (int c = 0; c < 8; ++c) {
      for (int k = 0; k < 8; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
          acc += (inverse ? coef(i, k) : coef(k, i)) * tmp[i * 8 + c];
        }
        out[k * 8 + c] = acc;
      }
    }
    return out;
  }

  std::array<double, 64> basis_{};
};

const Dct8& dct() {
  static const Dct8 instance;
  return instance;
}

struct BlockGrid {
  std::uint32_t width;
  std::uint32_t height;
  std::uint32_t cols;
  std::uint32_t rows;

  BlockGrid(std::uint32_t w, std::uint32_t h)
      : width(w), height(h), cols((w + 7) / 8), rows((h + 7) / 8) {}
};

// Y, Cb, Cr planes rounded to integers.
std::array<std::vector<std::uint8_t>, 3> to_ycbcr(const SdrImage& img) {
  std::array<std::vector<std::uint8_t>, 3> out;
  for (auto& p : out) p.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double r = img.r[i];
    const double g = img.g[i];
    const double b = img.b[i];
    out[0][i] = to_byte(0.299 * r + 0.587 * g + 0.114 * b);
    out[1][i] = to_byte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
    out[2][i] = to_byte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
  }
  return out;
}

SdrImage to_rgb(const std::array<std::vector<std::uint8_t>, 3>& ycc, std::uint32_t width,
                std::uint32_t height) {
  SdrImage img(width, height);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double y = ycc[0][i];
    const double cb = ycc[1][i] - 128.0;
    const double cr = ycc[2][i] - 128.0;
    img.r[i] = to_byte(y + 1.402 * cr);
    img.g[i] = to_byte(y - 0.344136 * cb - 0.714136 * cr);
    img.b[i] = to_byte(y + 1.772 * cb);
  }
  return img;
}

Block load_block(const std::vector<std::uint8_t>& plane, const BlockGrid& grid,
                 std::uint32_t bx, std::uint32_t by) {
  Block block{};
  for (std::uint32_t y = 0; y < 8; ++y) {
    const std::uint32_t sy = std::min(by * 8 + y, grid.height - 1);
    for (std::uint32_t x = 0; x < 8; ++x) {
      const std::uint32_t sx = std::min(bx * 8 + x, grid.width - 1);
      block[y * 8 + x] = plane[std::size_t{sy} * grid.width + sx] - 128.0;
    }
  }
  return block;
}

void store_block(const Coefficients& q, const QuantTable& table, std::vector<std::uint8_t>& plane,
                 const BlockGrid& grid, std::uint32_t bx, std::uint32_t by) {
  Block dequant{};
  for (int i = 0; i < 64; ++i) dequant[i] = static_cast<double>(q[i]) * table[i];
  const Block pixels = dct().inverse(dequant);
  for (std::uint32_t y = 0; y < 8; ++y) {
    const std::uint32_t sy = by * 8 + y;
    if (sy >= grid.height) break;
    for (std::uint32_t x = 0; x < 8; ++x) {
      const std::uint32_t sx = bx * 8 + x;
      if (sx >= grid.width) break;
      plane[std::size_t{sy} * grid.width + sx] = to_byte(pixels[y * 8 + x] + 128.0);
    }
  }
}

struct SymbolContexts {
  RiceContext dc;
  RiceContext last;
  RiceContext run;
  RiceContext level;
};

void write_block(BitWriter& bits, const Coefficients& q, std::int32_t& prev_dc,
                 SymbolContexts& ctx) {
  ctx.dc.write(bits, interleave(q[0] - prev_dc), kCoefficientEscapeBits);
  prev_dc = q[0];
  int last = 0;
  for (int k = 63; k > 0; --k) {
    if (q[detail::kZigzag[k]] != 0) {
      last = k;
      break;
    }
  }
  ctx.last.write(bits, static_cast<std::uint32_t>(last), kCoefficientEscapeBits);
  int pos = 1;
  while (pos <= last) {
    int next = pos;
    while (q[detail::kZigzag[next]] == 0) ++next;
    const std::int32_t v = q[detail::kZigzag[next]];
    ctx.run.write(bits, static_cast<std::uint32_t>(next - pos), kCoefficientEscapeBits);
    ctx.level.write(bits, static_cast<std::uint32_t>(std::abs(v) - 1), kCoefficientEscapeBits);
    bits.put_bit(v < 0);
    pos = next + 1;
  }
}

Coefficients read_block(BitReader& bits, std::int32_t& prev_dc, SymbolContexts& ctx) {
  Coefficients q{};
  q[0] = prev_dc + deinterleave(ctx.dc.read(bits, kCoefficientEscapeBits));
  prev_dc = q[0];
  const std::uint32_t last = ctx.last.read(bits, kCoefficientEscapeBits);
  if (last > 63) fail(ErrorCode::kFormat, "bad end-of-block position");
  std::uint32_t pos = 1;
  while (pos <= last) {
    const std::uint32_t run = ctx.run.read(bits, kCoefficientEscapeBits);
    if (run > last - pos) fail(ErrorCode::kFormat, "zero run past end of block");
    pos += run;
    const auto magnitude = static_cast<std::int32_t>(ctx.level.read(bits, kCoefficientEscapeBits)) + 1;
    q[detail::kZigzag[pos]] = bits.get_bit() ? -magnitude : magnitude;
    ++pos;
  }
  return q;
}

class ReferenceLossyCoder final : public LossyCoder {
 public:
  std::uint8_t id() const override { return kReferenceCoderId; }
  std::string_view name() const override { return "dct8"; }

  std::vector<std::uint8_t> encode(const SdrImage& image, int quality,
                                   SdrImage& reconstruction) const override {
    check_dimensions(image.width, image.height, "image");
    const std::array<QuantTable, 3> tables = quant_tables(quality);
    const BlockGrid grid(image.width, image.height);
    const auto ycc = to_ycbcr(image);
    std::array<std::vector<std::uint8_t>, 3> recon;
    for (auto& p : recon) p.resize(image.size());

    BitWriter bits;
    std::array<SymbolContexts, 2> contexts;
    std::array<std::int32_t, 3> prev_dc{};
    for (std::uint32_t by = 0; by < grid.rows; ++by) {
      for (std::uint32_t bx = 0; bx < grid.cols; ++bx) {
        for (int c = 0; c < 3; ++c) {
          const Block coeffs = dct().forward(load_block(ycc[c], grid, bx, by));
          Coefficients q{};
          for (int i = 0; i < 64; ++i) {
            q[i] = static_cast<std::int32_t>(std::round(coeffs[i] / tables[c][i]));
          }
          write_block(bits, q, prev_dc[c], contexts[c == 0 ? 0 : 1]);
          store_block(q, tables[c], recon[c], grid, bx, by);
        }
      }
    }
    reconstruction = to_rgb(recon, image.width, image.height);

    ByteWriter out;
    out.u32(image.width);
    out.u32(image.height);
    out.u8(static_cast<std::uint8_t>(quality));
    out.bytes(bits.finish());
    return std::move(out.data());
  }

  SdrImage decode(std::span<const std::uint8_t> body) const override {
    ByteReader header(body);
    const std::uint32_t width = header.u32();
    const std::uint32_t height = header.u32();
    const int quality = header.u8();
    check_dimensions(width, height, "image");
    if (quality < 1 || quality > 100) fail(ErrorCode::kFormat, "bad base-layer quality");
    const std::array<QuantTable, 3> tables = quant_tables(quality);
    const BlockGrid grid(width, height);
    std::array<std::vector<std::uint8_t>, 3> recon;
    for (auto& p : recon) p.resize(std::size_t{width} * height);

    BitReader bits(header.rest());
    std::array<SymbolContexts, 2> contexts;
    std::array<std::int32_t, 3> prev_dc{};
    for (std::uint32_t by = 0; by < grid.rows; ++by) {
      for (std::uint32_t bx = 0; bx < grid.cols; ++bx) {
        for (int c = 0; c < 3; ++c) {
          const Coefficients q = read_block(bits, prev_dc[c], contexts[c == 0 ? 0 : 1]);
          store_block(q, tables[c], recon[c], grid, bx, by);
        }
      }
    }
    return to_rgb(recon, width, height);
  }

 private:
  static std::array<QuantTable, 3> quant_tables(int quality) {
    const QuantTable luma = detail::scaled_quant_table(detail::kLumaQuant, quality);
    const QuantTable chroma = detail::scaled_quant_table(detail::kChromaQuant, quality);
    return {luma, chroma, chroma};
  }
};

}  // namespace

const LossyCoder& reference_lossy_coder() {
  static const ReferenceLossyCoder coder;
  return coder;
}

}  // namespace hdll
