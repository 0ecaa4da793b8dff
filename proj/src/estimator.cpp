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

#include "hdll/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hdll/error.hpp"

namespace hdll {
namespace {

// Half-sample symmetric extension, periodic with period 2n.
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return m < static_cast<std::ptrdiff_t>(n) ? static_cast<std::size_t>(m)
                                            : static_cast<std::size_t>(period - 1 - m);
}

void blur_plane(std::vector<double>& plane, std::uint32_t width, std::uint32_t height,
                const std::vector<double>& kernel) {
  const std::size_t taps = kernel.size();
  const auto radius = static_cast<std::ptrdiff_t>(taps / 2);
  std::vector<double> tmp(plane.size());
  std::vector<double> padded(width + taps - 1);
  for (std::uint32_t y = 0; y < height; ++y) {
    const double* row = plane.data() + std::size_t{y} * width;
    for (std::size_t i = 0; i < padded.size(); ++i) {
      padded[i] = row[reflect(static_cast<std::ptrdiff_t>(i) - radius, width)];
    }
    double* out = tmp.data() + std::size_t{y} * width;
    for (std::uint32_t x = 0; x < width; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < taps; ++k) acc += kernel[k] * padded[x + k];
      out[x] = acc;
    }
  }
  // Column pass, one output row at a time; each sample still sums its taps
  // in kernel order.
  for (std::uint32_t y = 0; y < height; ++y) {
    double* out = plane.data() + std::size_t{y} * width;
    std::fill(out, out + width, 0.0);
    for (std::size_t k = 0; k < taps; ++k) {
      const std::size_t src =
          reflect(static_cast<std::ptrdiff_t>(y + k) - radius, height);
      const double* in = tmp.data() + src * width;
      const double w = kernel[k];
      for (std::uint32_t x = 0; x < width; ++x) out[x] += w * in[x];
    }
  }
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    fail(ErrorCode::kInvalidArgument, "Gaussian sigma must be positive");
  }
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double w = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

FilteredSdr to_filtered(const SdrImage& s) {
  FilteredSdr out;
  out.width = s.width;
  out.height = s.height;
  for (int c = 0; c < 3; ++c) {
    const auto& src = s.channel(c);
    out.channels[c].assign(src.begin(), src.end());
  }
  return out;
}

FilteredSdr gaussian_prefilter(const SdrImage& s, double sigma) {
  FilteredSdr out = to_filtered(s);
  if (sigma == 0.0 || out.size() == 0) return out;
  const std::vector<double> kernel = gaussian_kernel(sigma);
  for (auto& plane : out.channels) blur_plane(plane, s.width, s.height, kernel);
  return out;
}

LinearFit RegressionAccumulator::solve() const {
  if (n_ == 0) fail(ErrorCode::kInvalidArgument, "cannot fit an empty region");
  const auto n = static_cast<double>(n_);
  const double denom = n * sxx_ - sx_ * sx_;
  const double mean_y = ky_ + sy_ / n;
  // Constant x leaves only rounding noise in the denominator.
  if (denom <= 1e-12 * n * sxx_) return {0.0, mean_y};
  const double a = (n * sxy_ - sx_ * sy_) / denom;
  return {a, mean_y - a * (kx_ + sx_ / n)};
}

LinearFit fit_region(std::span<const double> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) fail(ErrorCode::kInvalidArgument, "region sample counts differ");
  RegressionAccumulator acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc.add(x[i], y[i]);
  return acc.solve();
}

void RegressionTable::validate(std::uint64_t pixel_count) const {
  std::array<std::uint64_t, 3> totals{};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const RegressionEntry& e = entries[i];
    if (static_cast<int>(e.channel) > 2) fail(ErrorCode::kFormat, "bad regression channel");
    if (e.count == 0) fail(ErrorCode::kFormat, "regression entry with zero pixels");
    if (!std::isfinite(e.a) || !std::isfinite(e.b)) {
      fail(ErrorCode::kFormat, "non-finite regression parameter");
    }
    if (i > 0) {
      const RegressionEntry& p = entries[i - 1];
      if (std::pair(p.channel, p.exponent) >= std::pair(e.channel, e.exponent)) {
        fail(ErrorCode::kFormat, "regression entries not strictly sorted");
      }
    }
    totals[static_cast<int>(e.channel)] += e.count;
  }
  if (entries.empty()) return;
  for (std::uint64_t t : totals) {
    if (t != pixel_count) fail(ErrorCode::kFormat, "regression counts do not cover the image");
  }
}

RegressionTable fit_slrme(const HdrPlanes& planes, const FilteredSdr& s_star,
                          RegionMode mode) {
  const std::size_t n = std::size_t{planes.width} * planes.height;
  if (s_star.width != planes.width || s_star.height != planes.height ||
      planes.e.size() != n || s_star.channels[0].size() != n) {
    fail(ErrorCode::kInvalidArgument, "mantissa planes and filtered SDR differ in size");
  }
  const std::array<const std::vector<std::uint8_t>*, 3> mantissas = {&planes.m_r, &planes.m_g,
                                                                     &planes.m_b};
  std::array<std::uint32_t, 256> exponent_counts{};
  for (std::uint8_t e : planes.e) ++exponent_counts[e];

  RegressionTable table;
  for (int c = 0; c < 3; ++c) {
    const std::vector<double>& x = s_star.channels[c];
    const std::vector<std::uint8_t>& y = *mantissas[c];
    std::array<RegressionAccumulator, 256> regions;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint8_t region = mode == RegionMode::kGlobal ? 0 : planes.e[i];
      regions[region].add(x[i], y[i]);
    }
    for (int e = 0; e < 256; ++e) {
      if (exponent_counts[e] == 0) continue;
      const LinearFit fit = regions[mode == RegionMode::kGlobal ? 0 : e].solve();
      const auto a = static_cast<float>(fit.a);
      const auto b = static_cast<float>(fit.b);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        fail(ErrorCode::kRange, "regression parameters overflow 32-bit storage");
      }
      table.entries.push_back({static_cast<Channel>(c), static_cast<std::uint8_t>(e), a, b,
                               exponent_counts[e]});
    }
  }
  return table;
}

MantissaPlanes estimate_mantissa(const FilteredSdr& s_star,
                                 std::span<const std::uint8_t> e_plane,
                                 const RegressionTable& table) {
  const std::size_t n = s_star.size();
  if (e_plane.size() != n) {
    fail(ErrorCode::kInvalidArgument, "exponent plane and filtered SDR differ in size");
  }
  struct Params {
    double a = 0.0;
    double b = 0.0;
    bool present = false;
  };
  std::array<std::array<Params, 256>, 3> lookup{};
  for (const RegressionEntry& entry : table.entries) {
    lookup[static_cast<int>(entry.channel)][entry.exponent] = {entry.a, entry.b, true};
  }

  MantissaPlanes out;
  for (int c = 0; c < 3; ++c) {
    const std::vector<double>& x = s_star.channels[c];
    std::vector<std::uint8_t>& m = out[c];
    m.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Params& p = lookup[c][e_plane[i]];
      if (!p.present) {
        fail(ErrorCode::kFormat, "no regression entry for channel " + std::to_string(c) +
                                     ", exponent " + std::to_string(e_plane[i]));
      }
      const double v = std::round(p.a * x[i] + p.b);
      m[i] = static_cast<std::uint8_t>(v <= 0.0 ? 0.0 : v >= 255.0 ? 255.0 : v);
    }
  }
  return out;
}

}  // namespace hdll
