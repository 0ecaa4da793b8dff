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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hdll/hdll.h"
#include "test_util.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HDLL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, sep);) out.push_back(field);
  return out;
}

// Number following `label` on the line that contains it.
long long number_after(const std::string& text, const std::string& label) {
  const auto at = text.find(label);
  REQUIRE(at != std::string::npos);
  return std::stoll(text.substr(at + label.size()));
}

class Corpus {
 public:
  Corpus() : dir_("cli") {
    REQUIRE(run("synth --out " + q(corpus()) + " --seed 3 --size 48").status == 0);
  }
  std::filesystem::path corpus() const { return dir_.path() / "corpus"; }
  std::filesystem::path file(const std::string& name) const { return dir_.path() / name; }
  std::filesystem::path image(const std::string& stem) const {
    return corpus() / (stem + ".hdr");
  }

 private:
  hdll::test::TempDir dir_;
};

bool same_image(const std::filesystem::path& a, const std::filesystem::path& b) {
  hdll_image* x = nullptr;
  hdll_image* y = nullptr;
  REQUIRE(hdll_image_read_file(a.c_str(), &x) == HDLL_OK);
  REQUIRE(hdll_image_read_file(b.c_str(), &y) == HDLL_OK);
  const bool equal = hdll_image_equal(x, y) == 1;
  hdll_image_destroy(x);
  hdll_image_destroy(y);
  return equal;
}


}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("encode --input a.hdr").status == 2);
  CHECK(run("encode --input a.hdr --output b.hll --no-slrme --global-slrme").status == 2);
  CHECK(run("encode --input a.hdr --output b.hll --quality 0").status == 2);
  CHECK(run("decode --input a.hll").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("runtime failures exit with 1") {
  Corpus c;
  CHECK(run("encode --input /nonexistent.hdr --output " + q(c.file("x.hll"))).status == 1);
  CHECK(run("decode --input " + q(c.image("steps_00")) + " --sdr " + q(c.file("x.ppm"))).status == 1);
  CHECK(run("inspect --input /nonexistent.hll").status == 1);
}

TEST_CASE("encode and decode round trip") {
  Corpus c;
  const auto src = c.image("gradient_00");
  const auto hll = c.file("g.hll");
  const Run enc = run("encode --input " + q(src) + " --output " + q(hll));
  REQUIRE(enc.status == 0);
  CHECK(std::count(enc.out.begin(), enc.out.end(), '\n') == 1);
  CHECK(enc.out.find("q=85") != std::string::npos);
  CHECK(enc.out.find("bpp_total=") != std::string::npos);
  CHECK(enc.out.find("total_ms=") != std::string::npos);
  CHECK(number_after(enc.out, "bytes=") == static_cast<long long>(std::filesystem::file_size(hll)));

  const auto hdr = c.file("g.hdr");
  const auto ppm = c.file("g.ppm");
  REQUIRE(run("decode --input " + q(hll) + " --hdr " + q(hdr) + " --sdr " + q(ppm)).status == 0);
  CHECK(same_image(src, hdr));
  std::ifstream in(ppm, std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P6");
  CHECK(w == 48);
  CHECK(h == 48);
  CHECK(maxval == 255);
  CHECK(std::filesystem::file_size(ppm) == static_cast<std::size_t>(in.tellg()) + 1 + 48 * 48 * 3);
}

TEST_CASE("estimator flags") {
  Corpus c;
  const auto src = c.image("affine_01");
  REQUIRE(run("encode --no-slrme --input " + q(src) + " --output " + q(c.file("off.hll"))).status == 0);
  REQUIRE(run("encode --global-slrme --input " + q(src) + " --output " + q(c.file("glob.hll"))).status == 0);
  REQUIRE(run("encode --quality 40 --sigma 2 --input " + q(src) + " --output " + q(c.file("on.hll"))).status == 0);

  const Run off = run("inspect --input " + q(c.file("off.hll")));
  CHECK(off.out.find("flags: 0x0") != std::string::npos);
  CHECK(number_after(off.out, "regression table: ") == 0);
  const Run glob = run("inspect --input " + q(c.file("glob.hll")));
  CHECK(glob.out.find("flags: 0x3") != std::string::npos);
  const Run on = run("inspect --input " + q(c.file("on.hll")));
  CHECK(on.out.find("quality 40") != std::string::npos);
  CHECK(on.out.find("sigma: 2") != std::string::npos);
  CHECK(number_after(on.out, "regression table: ") % 3 == 0);
  CHECK(number_after(on.out, "regression table: ") > 0);

  for (const char* f : {"off.hll", "glob.hll", "on.hll"}) {
    const auto out = c.file(std::string(f) + ".hdr");
    REQUIRE(run("decode --input " + q(c.file(f)) + " --hdr " + q(out)).status == 0);
    CHECK(same_image(src, out));
  }
}

TEST_CASE("inspect section sizes add up") {
  Corpus c;
  const auto hll = c.file("s.hll");
  REQUIRE(run("encode --input " + q(c.image("steps_02")) + " --output " + q(hll)).status == 0);
  const Run r = run("inspect --input " + q(hll));
  REQUIRE(r.status == 0);
  long long sum = 0;
  for (const char* label : {"\n  header ", "\n  base ", "\n  exponent ", "\n  residual_r ",
                            "\n  residual_g ", "\n  residual_b "}) {
    sum += number_after(r.out, label);
  }
  CHECK(sum == static_cast<long long>(std::filesystem::file_size(hll)));
  CHECK(number_after(r.out, "\n  total ") == sum);
}

TEST_CASE("inspect of a Radiance file lists distinct exponents") {
  Corpus c;
  const auto src = c.image("gradient_03");
  const Run r = run("inspect --input " + q(src));
  REQUIRE(r.status == 0);
  hdll_image* image = nullptr;
  REQUIRE(hdll_image_read_file(src.c_str(), &image) == HDLL_OK);
  uint64_t hist[256] = {};
  REQUIRE(hdll_image_exponent_histogram(image, hist) == HDLL_OK);
  hdll_image_destroy(image);
  const long long distinct = std::count_if(std::begin(hist), std::end(hist), [](uint64_t v) { return v > 0; });
  CHECK(number_after(r.out, "exponent histogram (") == distinct);
  CHECK(distinct >= 6);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= distinct);
}

TEST_CASE("SDR decoding of a truncated stream") {
  Corpus c;
  const auto hll = c.file("t.hll");
  REQUIRE(run("encode --input " + q(c.image("affine_00")) + " --output " + q(hll)).status == 0);
  const Run r = run("inspect --input " + q(hll));
  const auto keep = static_cast<std::size_t>(number_after(r.out, "\n  header ") +
                                             number_after(r.out, "\n  base "));
  std::filesystem::resize_file(hll, keep);
  CHECK(run("decode --input " + q(hll) + " --sdr " + q(c.file("t.ppm"))).status == 0);
  CHECK(run("decode --input " + q(hll) + " --hdr " + q(c.file("t.hdr"))).status == 1);

  std::filesystem::resize_file(hll, keep - 1);
  CHECK(run("decode --input " + q(hll) + " --sdr " + q(c.file("u.ppm"))).status == 1);
}

TEST_CASE("corrupted streams fail") {
  Corpus c;
  const auto hll = c.file("c.hll");
  REQUIRE(run("encode --input " + q(c.image("gradient_01")) + " --output " + q(hll)).status == 0);
  std::fstream f(hll, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(static_cast<std::streamoff>(std::filesystem::file_size(hll) - 40));
  f.put('\x5a');
  f.close();
  CHECK(run("decode --input " + q(hll) + " --hdr " + q(c.file("c.hdr"))).status == 1);
}

TEST_CASE("synth is deterministic") {
  hdll::test::TempDir dir("cli-synth");
  REQUIRE(run("synth --out " + q(dir.path() / "a") + " --seed 4 --size 16").status == 0);
  REQUIRE(run("synth --out " + q(dir.path() / "b") + " --seed 4 --size 16").status == 0);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path() / "a")) {
    const auto other = dir.path() / "b" / entry.path().filename();
    std::ifstream x(entry.path(), std::ios::binary), y(other, std::ios::binary);
    const std::string bx((std::istreambuf_iterator<char>(x)), {});
    const std::string by((std::istreambuf_iterator<char>(y)), {});
    CHECK(bx == by);
    ++files;
  }
  CHECK(files == 24);
}

TEST_CASE("bench writes per-image rows and exact averages") {
  Corpus c;
  const auto csv = c.file("r.csv");
  const Run r = run("bench --corpus " + q(c.corpus()) + " --repeat 1 --out " + q(csv));
  REQUIRE(r.status == 0);
  CHECK(r.out.find("encode time ratio") != std::string::npos);

  std::ifstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "image_id,mode,quality,bpp_total,bpp_base,bpp_enh,bpp_payloads,encode_ms,decode_ms,"
        "table_entries,lossless_ok");
  std::map<std::string, std::vector<std::vector<std::string>>> rows;
  std::map<std::string, std::vector<std::string>> averages;
  while (std::getline(in, line)) {
    const auto fields = split(line, ',');
    REQUIRE(fields.size() == 11);
    if (fields[0] == "average") {
      averages[fields[1]] = fields;
    } else {
      rows[fields[1]].push_back(fields);
    }
  }
  REQUIRE(rows.size() == 3);
  REQUIRE(averages.size() == 3);
  for (const auto& [mode, records] : rows) {
    CHECK(records.size() == 24);
    std::set<std::string> ids;
    std::vector<double> sums(11, 0.0);
    for (const auto& rec : records) {
      ids.insert(rec[0]);
      CHECK(rec[2] == "85");
      CHECK(rec[10] == "true");
      CHECK(std::stod(rec[3]) >= std::stod(rec[4]));
      CHECK(std::stod(rec[3]) == doctest::Approx(std::stod(rec[4]) + std::stod(rec[5])));
      CHECK((std::stod(rec[9]) > 0) == (mode != "no-slrme"));
      for (int i = 3; i <= 9; ++i) sums[i] += std::stod(rec[i]);
    }
    CHECK(ids.size() == 24);
    for (int i = 3; i <= 9; ++i) {
      CHECK(std::stod(averages[mode][i]) == doctest::Approx(sums[i] / 24).epsilon(1e-12));
    }
  }
}

TEST_CASE("bench rejects unknown modes") {
  Corpus c;
  CHECK(run("bench --corpus " + q(c.corpus()) + " --modes fast --out " + q(c.file("x.csv"))).status == 2);
}
