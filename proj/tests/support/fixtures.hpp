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


// Golden stream fixtures shared by the unit and acceptance tests.

#ifndef HDLL_FIXTURES_HPP
#define HDLL_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hdll/container.hpp"
#include "json.hpp"

namespace hdll::test {

struct Fixture {
  std::string stream;
  std::string source;
  std::string mode;
  std::size_t bytes = 0;
  std::uint32_t stream_crc = 0;
  std::uint32_t sdr_crc = 0;
  std::uint32_t mstar_crc = 0;
};

struct FixtureSet {
  int quality = 0;
  double sigma = 0.0;
  std::vector<Fixture> fixtures;
};

inline FixtureSet load_fixtures(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing " + (dir / "manifest.json").string());
  const nlohmann::json j = nlohmann::json::parse(in);
  auto hex = [](const nlohmann::json& v) {
    return static_cast<std::uint32_t>(std::stoul(v.get<std::string>(), nullptr, 16));
  };
  FixtureSet set;
  set.quality = j.at("quality").get<int>();
  set.sigma = j.at("sigma").get<double>();
  for (const auto& f : j.at("fixtures")) {
    set.fixtures.push_back({f.at("stream"), f.at("source"), f.at("mode"), f.at("bytes"),
                            hex(f.at("stream_crc32")), hex(f.at("sdr_crc32")),
                            hex(f.at("mstar_crc32"))});
  }
  return set;
}

// Problems found with one fixture; empty when it checks out.
inline std::vector<std::string> check_fixture(const std::filesystem::path& dir,
                                              const FixtureSet& set, const Fixture& f) {
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(f.stream + ": " + what);
  };
  const auto bytes = read_file_bytes(dir / f.stream);
  expect(bytes.size() == f.bytes, "size differs from manifest");
  expect(crc32(bytes) == f.stream_crc, "stream checksum differs from manifest");

  const DualLayerStream stream = deserialize(bytes);
  expect(serialize(stream) == bytes, "serialize(deserialize(x)) != x");
  expect(crc32(decode_sdr(stream)) == f.sdr_crc, "decoded base layer differs");

  const RadianceImage source = read_hdr_file(dir / f.source);
  const DecodeResult decoded = decode_hdr_with_digest(stream);
  expect(decoded.image == source, "decoded image differs from the source");
  expect(decoded.mstar_digest == f.mstar_crc, "decoder estimate differs from the encoder's");

  EncoderConfig config;
  config.mode = f.mode == "slrme" ? EstimatorMode::kPerExponent : EstimatorMode::kOff;
  config.lossy.quality = static_cast<std::uint8_t>(set.quality);
  config.sigma = set.sigma;
  const EncodeResult again = encode(source, config);
  expect(serialize(again.stream) == bytes, "re-encoding produced different bytes");
  expect(again.mstar_digest == f.mstar_crc, "re-encoded estimate differs");
  return problems;
}

}  // namespace hdll::test

#endif  // HDLL_FIXTURES_HPP
