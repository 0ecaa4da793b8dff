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

// Reference enhancement-layer coder: MED prediction, modulo-256 residuals,
// adaptive Rice codes per activity context, and a run mode for flat
// neighborhoods.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>

#include "byte_io.hpp"
#include "coders.hpp"
#include "hdll/bit_io.hpp"

namespace hdll {
namespace {

constexpr int kSampleEscapeBits = 8;
constexpr int kRunEscapeBits = 32;
constexpr int kBorderContext = 8;
constexpr int kContextCount = 9;

constexpr std::array<int, 7> kActivityThresholds = {0, 2, 4, 8, 16, 32, 64};

int activity_context(int a, int b, int c) {
  const int activity = std::abs(a - c) + std::abs(b - c);
  int ctx = 0;
  while (ctx < 7 && activity > kActivityThresholds[ctx]) ++ctx;
  return ctx;
}

struct Neighbors {
  int a = 0;
  int b = 0;
  int c = 0;
};

class PlaneModel {
 public:
  PlaneModel(const std::uint8_t* samples, std::uint32_t width)
      : samples_(samples), width_(width) {}

  // The first column borrows its left and corner neighbors from above.
  Neighbors neighbors(std::uint32_t x, std::uint32_t y) const {
    const std::uint8_t* row = samples_ + std::size_t{y} * width_;
    Neighbors n;
    if (x > 0) n.a = row[x - 1];
    if (y == 0) return n;
    const std::uint8_t* above = row - width_;
    n.b = above[x];
    if (x > 0) {
      n.c = above[x - 1];
    } else {
      n.a = n.b;
      n.c = n.b;
    }
    return n;
  }

  static bool flat(std::uint32_t y, const Neighbors& n) {
    return y > 0 && n.a == n.b && n.b == n.c;
  }

  // Prediction and context for a sample coded in regular mode.
  static std::pair<int, int> predict(std::uint32_t x, std::uint32_t y, const Neighbors& n) {
    if (x == 0 && y == 0) return {128, kBorderContext};
    if (y == 0) return {n.a, kBorderContext};
    if (x == 0) return {n.b, kBorderContext};
    return {detail::med_predict(n.a, n.b, n.c), activity_context(n.a, n.b, n.c)};
  }

 private:
  const std::uint8_t* samples_;
  std::uint32_t width_;
};

// Raster position walker; runs may continue across row boundaries.
struct Cursor {
  std::uint32_t width;
  std::size_t index = 0;
  std::uint32_t x() const { return static_cast<std::uint32_t>(index % width); }
  std::uint32_t y() const { return static_cast<std::uint32_t>(index / width); }
};

class ReferenceLosslessCoder final : public LosslessCoder {
 public:
  std::uint8_t id() const override { return kReferenceCoderId; }
  std::string_view name() const override { return "med-rice"; }

  std::vector<std::uint8_t> encode(const Plane8& plane) const override {
    check_dimensions(plane.width, plane.height, "plane");
    const std::size_t total = std::size_t{plane.width} * plane.height;
    if (plane.samples.size() != total) {
      fail(ErrorCode::kInvalidArgument, "plane sample count does not match dimensions");
    }
    std::array<RiceContext, kContextCount> contexts;
    RiceContext runs;
    BitWriter bits;
    const std::uint8_t* samples = plane.samples.data();
    const PlaneModel model(samples, plane.width);
    Cursor at{plane.width};
    while (at.index < total) {
      Neighbors n = model.neighbors(at.x(), at.y());
      if (PlaneModel::flat(at.y(), n)) {
        std::size_t run = 0;
        while (at.index + run < total && samples[at.index + run] == n.a) ++run;
        if (run > UINT32_MAX) fail(ErrorCode::kUnsupported, "run too long");
        runs.write(bits, static_cast<std::uint32_t>(run), kRunEscapeBits);
        at.index += run;
        if (at.index == total) break;
        n = model.neighbors(at.x(), at.y());
      }
      const auto [pred, ctx] = PlaneModel::predict(at.x(), at.y(), n);
      const auto diff =
          static_cast<std::int8_t>(static_cast<std::uint8_t>(samples[at.index] - pred));
      contexts[ctx].write(bits, interleave(diff), kSampleEscapeBits);
      ++at.index;
    }
    ByteWriter out;
    out.u32(plane.width);
    out.u32(plane.height);
    out.bytes(bits.finish());
    return std::move(out.data());
  }

  Plane8 decode(std::span<const std::uint8_t> body) const override {
    ByteReader header(body);
    const std::uint32_t width = header.u32();
    const std::uint32_t height = header.u32();
    check_dimensions(width, height, "plane");
    Plane8 plane(width, height);
    const std::size_t total = plane.samples.size();
    std::array<RiceContext, kContextCount> contexts;
    RiceContext runs;
    BitReader bits(header.rest());
    std::uint8_t* samples = plane.samples.data();
    const PlaneModel model(samples, width);
    Cursor at{width};
    while (at.index < total) {
      Neighbors n = model.neighbors(at.x(), at.y());
      if (PlaneModel::flat(at.y(), n)) {
        const std::uint32_t run = runs.read(bits, kRunEscapeBits);
        if (run > total - at.index) fail(ErrorCode::kFormat, "run overflows plane");
        std::fill_n(samples + at.index, run, static_cast<std::uint8_t>(n.a));
        at.index += run;
        if (at.index == total) break;
        n = model.neighbors(at.x(), at.y());
      }
      const auto [pred, ctx] = PlaneModel::predict(at.x(), at.y(), n);
      const std::uint32_t u = contexts[ctx].read(bits, kSampleEscapeBits);
      samples[at.index] = static_cast<std::uint8_t>(pred + deinterleave(u));
      ++at.index;
    }
    return plane;
  }
};

}  // namespace

const LosslessCoder& reference_lossless_coder() {
  static const ReferenceLosslessCoder coder;
  return coder;
}

}  // namespace hdll
