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


#include <set>

#include "doctest.h"
#include "hdll/synthetic.hpp"
#include "test_util.hpp"

using namespace hdll;

TEST_CASE("corpus is deterministic") {
  const auto a = make_synthetic_corpus(7, 32);
  const auto b = make_synthetic_corpus(7, 32);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(write_hdr(a[i].image) == write_hdr(b[i].image));
  }
  CHECK(write_hdr(make_synthetic_corpus(8, 32)[0].image) != write_hdr(a[0].image));
}

TEST_CASE("corpus composition") {
  const auto corpus = make_synthetic_corpus(kDefaultCorpusSeed, 64);
  CHECK(corpus.size() == 24);
  std::set<std::string> names;
  std::array<int, 4> kinds{};
  for (const auto& img : corpus) {
    names.insert(img.name);
    ++kinds[static_cast<int>(img.kind)];
    CHECK(img.image.width == 64);
    CHECK(img.image.height == 64);
  }
  CHECK(names.size() == 24);
  CHECK(kinds == std::array<int, 4>{8, 7, 8, 1});
}

TEST_CASE("gradients span at least six exponents") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto img = make_synthetic_image(SyntheticKind::kGradient, seed, 128);
    std::set<int> exponents;
    for (const auto& p : img.image.pixels) exponents.insert(p.e);
    CHECK(exponents.size() >= 6);
  }
}

TEST_CASE("constant image has one pixel value") {
  const auto img = make_synthetic_image(SyntheticKind::kConstant, 1, 16);
  for (const auto& p : img.image.pixels) CHECK(p == img.image.pixels.front());
}

TEST_CASE("generated pixels are canonical") {
  for (const auto& img : make_synthetic_corpus(3, 32)) {
    CHECK(split_planes(img.image).canonical);
  }
}

TEST_CASE("written corpus reads back") {
  test::TempDir dir("synth");
  const auto paths = write_synthetic_corpus(dir.path() / "corpus", 5, 24);
  const auto corpus = make_synthetic_corpus(5, 24);
  REQUIRE(paths.size() == corpus.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(paths[i].filename() == corpus[i].name + ".hdr");
    CHECK(read_hdr_file(paths[i]) == corpus[i].image);
  }
}
