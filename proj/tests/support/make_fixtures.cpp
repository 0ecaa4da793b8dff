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


// Writes the golden stream fixtures: three small source images, each coded
// with and without the estimator, plus manifest.json with the digests the
// encoder saw. Usage: make_fixtures <dir>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hdll/container.hpp"
#include "hdll/synthetic.hpp"
#include "json.hpp"

namespace {

struct Source {
  const char* name;
  hdll::SyntheticKind kind;
  std::uint64_t seed;
};

constexpr Source kSources[] = {
    {"gradient", hdll::SyntheticKind::kGradient, 21},
    {"steps", hdll::SyntheticKind::kSteps, 22},
    {"affine", hdll::SyntheticKind::kAffine, 23},
};

constexpr std::uint32_t kSize = 40;
constexpr int kQuality = 85;
constexpr double kSigma = 1.0;

std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  try {
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["format_version"] = hdll::kStreamVersion;
    manifest["quality"] = kQuality;
    manifest["sigma"] = kSigma;
    for (const Source& src : kSources) {
      hdll::RadianceImage image = hdll::make_synthetic_image(src.kind, src.seed, kSize).image;
      if (src.kind == hdll::SyntheticKind::kAffine) {
        image.header_vars.push_back({"EXPOSURE", "0.5", true});
        image.orientation = hdll::Orientation::kPosYPosX;
      }
      const std::string hdr_name = std::string(src.name) + ".hdr";
      hdll::write_hdr_file(dir / hdr_name, image);
      for (auto mode : {hdll::EstimatorMode::kOff, hdll::EstimatorMode::kPerExponent}) {
        hdll::EncoderConfig config;
        config.mode = mode;
        config.lossy.quality = kQuality;
        config.sigma = kSigma;
        const hdll::EncodeResult r = hdll::encode(image, config);
        const auto bytes = hdll::serialize(r.stream);
        const bool slrme = mode == hdll::EstimatorMode::kPerExponent;
        const std::string hll_name = std::string(src.name) + (slrme ? "_slrme" : "_no_slrme") + ".hll";
        hdll::write_file_bytes(dir / hll_name, bytes);
        manifest["fixtures"].push_back({
            {"stream", hll_name},
            {"source", hdr_name},
            {"mode", slrme ? "slrme" : "no-slrme"},
            {"bytes", bytes.size()},
            {"stream_crc32", hex32(hdll::crc32(bytes))},
            {"sdr_crc32", hex32(r.sdr_digest)},
            {"mstar_crc32", hex32(r.mstar_digest)},
        });
      }
    }
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
    std::cout << "wrote " << manifest["fixtures"].size() << " fixtures to " << dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
