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

#include "hdll/radiance_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iterator>

#include "hdll/error.hpp"

namespace hdll {
namespace {

constexpr std::uint32_t kMinRleWidth = 8;
constexpr std::uint32_t kMaxRleWidth = 0x7fff;
constexpr std::size_t kMinRun = 4;

struct AxisPair {
  std::string_view major;
  std::string_view minor;
};

constexpr std::array<AxisPair, kOrientationCount> kAxes = {{
    {"-Y", "+X"},
    {"-Y", "-X"},
    {"+Y", "+X"},
    {"+Y", "-X"},
    {"+X", "-Y"},
    {"-X", "-Y"},
    {"+X", "+Y"},
    {"-X", "+Y"},
}};

bool rle_width(std::uint32_t width) {
  return width >= kMinRleWidth && width <= kMaxRleWidth;
}

bool is_run_marker(const RgbePixel& p) {
  return p.m_r == 1 && p.m_g == 1 && p.m_b == 1;
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool done() const { return pos_ >= bytes_.size(); }

  std::uint8_t byte() {
    if (done()) fail(ErrorCode::kFormat, "truncated scanline data");
    return bytes_[pos_++];
  }

  RgbePixel pixel() {
    if (bytes_.size() - pos_ < 4) fail(ErrorCode::kFormat, "truncated scanline data");
    RgbePixel p{bytes_[pos_], bytes_[pos_ + 1], bytes_[pos_ + 2], bytes_[pos_ + 3]};
    pos_ += 4;
    return p;
  }

  // Returns the line without its terminating newline.
  std::string_view line(const char* what) {
    const auto begin = bytes_.begin() + static_cast<std::ptrdiff_t>(pos_);
    const auto nl = std::find(begin, bytes_.end(), std::uint8_t{'\n'});
    if (nl == bytes_.end()) fail(ErrorCode::kFormat, std::string("unterminated ") + what);
    std::string_view text(reinterpret_cast<const char*>(&*begin),
                          static_cast<std::size_t>(nl - begin));
    pos_ += text.size() + 1;
    return text;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

HeaderVar parse_header_line(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return {std::string(line), {}, false};
  return {std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)), true};
}

void check_format(const HeaderVar& var) {
  if (!var.assignment || var.key != "FORMAT") return;
  if (var.value == kRgbeFormat) return;
  if (var.value == "32-bit_rle_xyze") {
    fail(ErrorCode::kUnsupported, "XYZE Radiance files are not supported");
  }
  fail(ErrorCode::kFormat, "unknown Radiance FORMAT '" + var.value + "'");
}

std::uint32_t parse_extent(std::string_view token) {
  std::uint32_t value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size() || value == 0) {
    fail(ErrorCode::kFormat, "bad resolution extent '" + std::string(token) + "'");
  }
  return value;
}

void parse_resolution(std::string_view line, RadianceImage& image) {
  std::array<std::string_view, 4> tokens;
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const auto end = std::min(line.find(' ', pos), line.size());
    if (count == tokens.size()) fail(ErrorCode::kFormat, "bad resolution line");
    tokens[count++] = line.substr(pos, end - pos);
    pos = end;
  }
  if (count != tokens.size()) fail(ErrorCode::kFormat, "bad resolution line");
  const auto it = std::find_if(kAxes.begin(), kAxes.end(), [&](const AxisPair& a) {
    return a.major == tokens[0] && a.minor == tokens[2];
  });
  if (it == kAxes.end()) {
    fail(ErrorCode::kFormat, "unrecognized resolution line '" + std::string(line) + "'");
  }
  image.orientation = static_cast<Orientation>(it - kAxes.begin());
  image.height = parse_extent(tokens[1]);
  image.width = parse_extent(tokens[3]);
}

// `filled` pixels at the front of `out` are already decoded.
void read_old_scanline(Cursor& in, std::span<RgbePixel> out, std::size_t filled = 0) {
  int shift = 0;
  while (filled < out.size()) {
    const RgbePixel p = in.pixel();
    if (!is_run_marker(p)) {
      out[filled++] = p;
      shift = 0;
      continue;
    }
    if (filled == 0) fail(ErrorCode::kFormat, "run-length marker without a preceding pixel");
    if (shift > 24) fail(ErrorCode::kFormat, "run-length count overflow");
    const std::uint64_t count = static_cast<std::uint64_t>(p.e) << shift;
    if (count > out.size() - filled) fail(ErrorCode::kFormat, "run overflows scanline");
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(filled), count, out[filled - 1]);
    filled += count;
    shift += 8;
  }
}

void read_rle_component(Cursor& in, std::span<RgbePixel> out, int component) {
  auto set = [component](RgbePixel& p, std::uint8_t v) {
    switch (component) {
      case 0: p.m_r = v; break;
      case 1: p.m_g = v; break;
      case 2: p.m_b = v; break;
      default: p.e = v; break;
    }
  };
  std::size_t j = 0;
  while (j < out.size()) {
    std::size_t count = in.byte();
    if (count > 128) {
      count -= 128;
      if (count > out.size() - j) fail(ErrorCode::kFormat, "run overflows scanline");
      const std::uint8_t v = in.byte();
      for (std::size_t k = 0; k < count; ++k) set(out[j++], v);
    } else {
      if (count == 0) fail(ErrorCode::kFormat, "zero-length literal in scanline");
      if (count > out.size() - j) fail(ErrorCode::kFormat, "literal overflows scanline");
      for (std::size_t k = 0; k < count; ++k) set(out[j++], in.byte());
    }
  }
}

void read_scanline(Cursor& in, std::span<RgbePixel> out) {
  const auto width = static_cast<std::uint32_t>(out.size());
  if (!rle_width(width)) {
    read_old_scanline(in, out);
    return;
  }
  const RgbePixel first = in.pixel();
  if (first.m_r != 2 || first.m_g != 2 || (first.m_b & 0x80) != 0) {
    if (is_run_marker(first)) fail(ErrorCode::kFormat, "run-length marker without a preceding pixel");
    out[0] = first;
    read_old_scanline(in, out, 1);
    return;
  }
  if ((static_cast<std::uint32_t>(first.m_b) << 8 | first.e) != width) {
    fail(ErrorCode::kFormat, "run-length scanline length does not match width");
  }
  for (int c = 0; c < 4; ++c) read_rle_component(in, out, c);
}

std::uint8_t component(const RgbePixel& p, int c) {
  switch (c) {
    case 0: return p.m_r;
    case 1: return p.m_g;
    case 2: return p.m_b;
    default: return p.e;
  }
}

void write_rle_component(std::span<const RgbePixel> line, int c,
                         std::vector<std::uint8_t>& out) {
  const std::size_t n = line.size();
  auto at = [&](std::size_t i) { return component(line[i], c); };
  auto run_at = [&](std::size_t i) {
    std::size_t r = 1;
    while (r < 127 && i + r < n && at(i + r) == at(i)) ++r;
    return r;
  };
  std::size_t j = 0;
  while (j < n) {
    const std::size_t run = run_at(j);
    if (run >= kMinRun) {
      out.push_back(static_cast<std::uint8_t>(128 + run));
      out.push_back(at(j));
      j += run;
      continue;
    }
    std::size_t end = j + run;
    while (end < n && end - j < 128 && run_at(end) < kMinRun) ++end;
    end = std::min(end, j + 128);
    out.push_back(static_cast<std::uint8_t>(end - j));
    for (std::size_t k = j; k < end; ++k) out.push_back(at(k));
    j = end;
  }
}

void append_text(std::vector<std::uint8_t>& out, std::string_view text) {
  out.insert(out.end(), text.begin(), text.end());
}

}  // namespace

std::string_view orientation_axes(Orientation o, int index) {
  const auto& pair = kAxes.at(static_cast<std::size_t>(o));
  return index == 0 ? pair.major : pair.minor;
}

RadianceImage parse_hdr(std::span<const std::uint8_t> bytes) {
  Cursor in(bytes);
  const std::string_view signature = in.line("signature line");
  if (!signature.starts_with("#?RADIANCE") && !signature.starts_with("#?RGBE")) {
    fail(ErrorCode::kFormat, "missing Radiance signature");
  }

  RadianceImage image;
  for (;;) {
    const std::string_view line = in.line("header");
    if (line.empty()) break;
    HeaderVar var = parse_header_line(line);
    check_format(var);
    image.header_vars.push_back(std::move(var));
  }
  parse_resolution(in.line("resolution line"), image);

  const std::uint64_t count = std::uint64_t{image.width} * image.height;
  // Every scanline takes at least one 4-byte group.
  if (std::uint64_t{image.height} * 4 > bytes.size() || count > (std::uint64_t{1} << 31)) {
    fail(ErrorCode::kFormat, "image dimensions exceed the available data");
  }
  image.pixels.resize(count);
  std::span<RgbePixel> all(image.pixels);
  for (std::uint32_t y = 0; y < image.height; ++y) {
    read_scanline(in, all.subspan(std::size_t{y} * image.width, image.width));
  }
  return image;
}

std::vector<std::uint8_t> write_hdr(const RadianceImage& image, bool rle) {
  if (image.width == 0 || image.height == 0) {
    fail(ErrorCode::kInvalidArgument, "cannot write an empty Radiance image");
  }
  if (image.pixels.size() != std::size_t{image.width} * image.height) {
    fail(ErrorCode::kInvalidArgument, "pixel count does not match dimensions");
  }

  std::vector<std::uint8_t> out;
  out.reserve(image.pixels.size() * 4 + 128);
  append_text(out, "#?RADIANCE\n");
  for (const HeaderVar& var : image.header_vars) {
    append_text(out, var.key);
    if (var.assignment) {
      out.push_back('=');
      append_text(out, var.value);
    }
    out.push_back('\n');
  }
  out.push_back('\n');
  append_text(out, orientation_axes(image.orientation, 0));
  append_text(out, " " + std::to_string(image.height) + " ");
  append_text(out, orientation_axes(image.orientation, 1));
  append_text(out, " " + std::to_string(image.width) + "\n");

  std::span<const RgbePixel> all(image.pixels);
  for (std::uint32_t y = 0; y < image.height; ++y) {
    const auto line = all.subspan(std::size_t{y} * image.width, image.width);
    const bool has_marker = std::any_of(line.begin(), line.end(), is_run_marker);
    const bool looks_rle = line[0].m_r == 2 && line[0].m_g == 2 && (line[0].m_b & 0x80) == 0;
    const bool use_rle = rle_width(image.width) && (rle || has_marker || looks_rle);
    if (use_rle) {
      out.push_back(2);
      out.push_back(2);
      out.push_back(static_cast<std::uint8_t>(image.width >> 8));
      out.push_back(static_cast<std::uint8_t>(image.width & 0xff));
      for (int c = 0; c < 4; ++c) write_rle_component(line, c, out);
      continue;
    }
    if (has_marker) {
      fail(ErrorCode::kUnsupported,
           "pixel (1,1,1,n) cannot be stored in a flat scanline of width " +
               std::to_string(image.width));
    }
    for (const RgbePixel& p : line) {
      out.insert(out.end(), {p.m_r, p.m_g, p.m_b, p.e});
    }
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIo, "error reading '" + path.string() + "'");
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "error writing '" + path.string() + "'");
}

RadianceImage read_hdr_file(const std::filesystem::path& path) {
  return parse_hdr(read_file_bytes(path));
}

void write_hdr_file(const std::filesystem::path& path, const RadianceImage& image,
                    bool rle) {
  write_file_bytes(path, write_hdr(image, rle));
}

HdrPlanes split_planes(const RadianceImage& image) {
  const std::size_t n = std::size_t{image.width} * image.height;
  if (image.pixels.size() != n) {
    fail(ErrorCode::kInvalidArgument, "pixel count does not match dimensions");
  }
  HdrPlanes planes;
  planes.width = image.width;
  planes.height = image.height;
  planes.m_r.resize(n);
  planes.m_g.resize(n);
  planes.m_b.resize(n);
  planes.e.resize(n);
  planes.canonical = true;
  for (std::size_t i = 0; i < n; ++i) {
    const RgbePixel& p = image.pixels[i];
    planes.m_r[i] = p.m_r;
    planes.m_g[i] = p.m_g;
    planes.m_b[i] = p.m_b;
    planes.e[i] = p.e;
    if (!is_canonical(p) && !is_zero(p)) planes.canonical = false;
  }
  return planes;
}

RadianceImage merge_planes(const HdrPlanes& planes) {
  const std::size_t n = std::size_t{planes.width} * planes.height;
  if (planes.m_r.size() != n || planes.m_g.size() != n || planes.m_b.size() != n ||
      planes.e.size() != n) {
    fail(ErrorCode::kInvalidArgument, "plane dimensions do not match");
  }
  RadianceImage image;
  image.width = planes.width;
  image.height = planes.height;
  image.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    image.pixels[i] = {planes.m_r[i], planes.m_g[i], planes.m_b[i], planes.e[i]};
  }
  return image;
}

}  // namespace hdll
