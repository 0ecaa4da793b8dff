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

#include "hdll/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <system_error>

#include "hdll/error.hpp"

namespace hdll {
namespace {

// std distributions differ between standard libraries, so draws are derived
// from the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Sum of a few random plane waves, normalized to [0, 1].
class SmoothTexture {
 public:
  SmoothTexture(Rng& rng, std::uint32_t size) {
    for (auto& w : waves_) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double freq = rng.uniform(0.5, 3.0) * 2.0 * std::numbers::pi / size;
      w = {freq * std::cos(angle), freq * std::sin(angle), rng.uniform(0.0, 2.0 * std::numbers::pi)};
    }
  }

  double operator()(double x, double y) const {
    double v = 0.0;
    for (const auto& w : waves_) v += std::sin(w[0] * x + w[1] * y + w[2]);
    return 0.5 + v / (2.0 * static_cast<double>(waves_.size()));
  }

 private:
  std::array<std::array<double, 3>, 3> waves_{};
};

RadianceImage blank(std::uint32_t size) {
  RadianceImage image;
  image.width = size;
  image.height = size;
  image.pixels.resize(std::size_t{size} * size);
  image.header_vars = {{"# synthetic test scene", {}, false},
                       {"FORMAT", std::string(kRgbeFormat), true}};
  return image;
}

RadianceImage gradient(Rng& rng, std::uint32_t size) {
  RadianceImage image = blank(size);
  const double cx = rng.uniform(0.2, 0.8) * size;
  const double cy = rng.uniform(0.2, 0.8) * size;
  const double octaves = rng.uniform(8.0, 12.0);
  const double peak = std::ldexp(1.0, rng.integer(-2, 6));
  const std::array<double, 3> tint = {rng.uniform(0.4, 1.0), rng.uniform(0.4, 1.0),
                                      rng.uniform(0.4, 1.0)};
  const double rmax = std::sqrt(2.0) * size;
  for (std::uint32_t y = 0; y < size; ++y) {
    for (std::uint32_t x = 0; x < size; ++x) {
      const double r = std::hypot(x - cx, y - cy);
      const double f = peak * std::exp2(-octaves * r / rmax);
      image.pixels[std::size_t{y} * size + x] =
          float_to_rgbe({f * tint[0], f * tint[1], f * tint[2]});
    }
  }
  return image;
}

RadianceImage steps(Rng& rng, std::uint32_t size) {
  RadianceImage image = blank(size);
  image.header_vars.push_back({"EXPOSURE", "1.0", true});
  constexpr int kTiles = 4;
  std::array<double, kTiles * kTiles> exposure{};
  for (double& e : exposure) e = std::ldexp(1.0, rng.integer(-6, 6));
  const SmoothTexture texture(rng, size);
  const std::array<double, 3> tint = {rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0),
                                      rng.uniform(0.5, 1.0)};
  const std::uint32_t tile = (size + kTiles - 1) / kTiles;
  for (std::uint32_t y = 0; y < size; ++y) {
    for (std::uint32_t x = 0; x < size; ++x) {
      const double base = exposure[(y / tile) * kTiles + x / tile] * (0.2 + 0.8 * texture(x, y));
      image.pixels[std::size_t{y} * size + x] =
          float_to_rgbe({base * tint[0], base * tint[1], base * tint[2]});
    }
  }
  return image;
}

// Smooth radiance spanning several octaves with mild multiplicative noise:
// within each exponent region the mantissas track the tone-mapped image
// through a nearly affine map.
RadianceImage affine(Rng& rng, std::uint32_t size) {
  RadianceImage image = blank(size);
  const SmoothTexture texture(rng, size);
  const double octaves = rng.uniform(4.0, 7.0);
  const double peak = std::ldexp(1.0, rng.integer(-3, 5));
  const std::array<double, 3> tint = {rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0),
                                      rng.uniform(0.5, 1.0)};
  const double noise = rng.uniform(0.001, 0.004);
  for (std::uint32_t y = 0; y < size; ++y) {
    for (std::uint32_t x = 0; x < size; ++x) {
      const double f = peak * std::exp2(-octaves * texture(x, y));
      FloatPixel p{};
      double* channels[3] = {&p.r, &p.g, &p.b};
      for (int c = 0; c < 3; ++c) {
        *channels[c] = f * tint[c] * std::max(0.0, 1.0 + noise * rng.normal());
      }
      image.pixels[std::size_t{y} * size + x] = float_to_rgbe(p);
    }
  }
  return image;
}

RadianceImage constant(Rng& rng, std::uint32_t size) {
  RadianceImage image = blank(size);
  const RgbePixel value{static_cast<std::uint8_t>(rng.integer(128, 255)),
                        static_cast<std::uint8_t>(rng.integer(0, 255)),
                        static_cast<std::uint8_t>(rng.integer(0, 255)),
                        static_cast<std::uint8_t>(rng.integer(120, 136))};
  std::fill(image.pixels.begin(), image.pixels.end(), value);
  return image;
}

const char* kind_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kGradient: return "gradient";
    case SyntheticKind::kSteps: return "steps";
    case SyntheticKind::kAffine: return "affine";
    case SyntheticKind::kConstant: return "constant";
  }
  return "unknown";
}

}  // namespace

SyntheticImage make_synthetic_image(SyntheticKind kind, std::uint64_t seed, std::uint32_t size) {
  if (size == 0) fail(ErrorCode::kInvalidArgument, "synthetic image size must be positive");
  Rng rng(seed);
  SyntheticImage out{kind_name(kind), kind, {}};
  switch (kind) {
    case SyntheticKind::kGradient: out.image = gradient(rng, size); break;
    case SyntheticKind::kSteps: out.image = steps(rng, size); break;
    case SyntheticKind::kAffine: out.image = affine(rng, size); break;
    case SyntheticKind::kConstant: out.image = constant(rng, size); break;
  }
  return out;
}

std::vector<SyntheticImage> make_synthetic_corpus(std::uint64_t seed, std::uint32_t size) {
  constexpr std::array<std::pair<SyntheticKind, int>, 4> kPlan = {{
      {SyntheticKind::kGradient, 8},
      {SyntheticKind::kSteps, 7},
      {SyntheticKind::kAffine, 8},
      {SyntheticKind::kConstant, 1},
  }};
  std::vector<SyntheticImage> corpus;
  std::uint64_t stream = 0;
  for (const auto& [kind, count] : kPlan) {
    for (int i = 0; i < count; ++i) {
      // Distinct, reproducible per-image seeds.
      SyntheticImage img = make_synthetic_image(kind, seed * 1000003u + stream++, size);
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_%02d", i);
      img.name += suffix;
      corpus.push_back(std::move(img));
    }
  }
  return corpus;
}

std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::uint64_t seed, std::uint32_t size) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (const SyntheticImage& img : make_synthetic_corpus(seed, size)) {
    const auto path = dir / (img.name + ".hdr");
    write_hdr_file(path, img.image);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace hdll
