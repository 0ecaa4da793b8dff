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

#ifndef HDLL_SYNTHETIC_HPP
#define HDLL_SYNTHETIC_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hdll/radiance_io.hpp"

namespace hdll {

enum class SyntheticKind {
  kGradient,  // smooth radial falloff across many exponents
  kSteps,     // tiles at constant exposure over a smooth pattern
  kAffine,    // smooth multi-octave texture with mild noise
  kConstant,  // one value everywhere
};

struct SyntheticImage {
  std::string name;  // file stem, e.g. "gradient_03"
  SyntheticKind kind;
  RadianceImage image;
};

inline constexpr std::uint64_t kDefaultCorpusSeed = 1;
inline constexpr std::uint32_t kDefaultCorpusSize = 256;

SyntheticImage make_synthetic_image(SyntheticKind kind, std::uint64_t seed, std::uint32_t size);

// 24 images: 8 gradients, 7 exposure-step scenes, 8 affine scenes and one
// constant image. Identical seeds give byte-identical files.
std::vector<SyntheticImage> make_synthetic_corpus(std::uint64_t seed = kDefaultCorpusSeed,
                                                  std::uint32_t size = kDefaultCorpusSize);

// Writes <name>.hdr files into `dir`, creating it if needed. Returns the
// paths written.
std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::uint64_t seed = kDefaultCorpusSeed,
                                                          std::uint32_t size = kDefaultCorpusSize);

}  // namespace hdll

#endif  // HDLL_SYNTHETIC_HPP
