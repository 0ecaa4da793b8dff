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

// hdll: command-line front end for the dual-layer lossless Radiance codec.
// Talks to the library exclusively through the C interface.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hdll/hdll.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Failure {
  std::string message;
};

void check(hdll_status status, const std::string& context) {
  if (status != HDLL_OK) {
    throw Failure{context + ": " + hdll_status_string(status) + ": " + hdll_last_error()};
  }
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using ImagePtr = std::unique_ptr<hdll_image, Deleter<hdll_image, hdll_image_destroy>>;
using StreamPtr = std::unique_ptr<hdll_stream, Deleter<hdll_stream, hdll_stream_destroy>>;
using SdrPtr = std::unique_ptr<hdll_sdr, Deleter<hdll_sdr, hdll_sdr_destroy>>;
using BufferPtr = std::unique_ptr<hdll_buffer, Deleter<hdll_buffer, hdll_buffer_destroy>>;

ImagePtr read_image(const std::string& path) {
  hdll_image* image = nullptr;
  check(hdll_image_read_file(path.c_str(), &image), path);
  return ImagePtr(image);
}

StreamPtr read_stream(const std::string& path) {
  hdll_stream* stream = nullptr;
  check(hdll_stream_read_file(path.c_str(), &stream), path);
  return StreamPtr(stream);
}

// Shortest representation that parses back to the same double.
std::string num(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

const char* mode_name(hdll_mode mode) {
  switch (mode) {
    case HDLL_MODE_NO_SLRME: return "no-slrme";
    case HDLL_MODE_SLRME: return "slrme";
    case HDLL_MODE_GLOBAL_SLRME: return "global-slrme";
  }
  return "?";
}

hdll_mode parse_mode(const std::string& name) {
  if (name == "no-slrme") return HDLL_MODE_NO_SLRME;
  if (name == "slrme") return HDLL_MODE_SLRME;
  if (name == "global-slrme") return HDLL_MODE_GLOBAL_SLRME;
  throw CLI::ValidationError("--modes", "unknown mode '" + name + "'");
}

bool is_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in.gcount() == 4 && std::string(magic, 4) == "HDLL";
}

struct EncodeArgs {
  std::string input;
  std::string output;
  int quality = 85;
  double sigma = 1.0;
  bool no_slrme = false;
  bool global_slrme = false;
  int lossy_coder = 1;
  int lossless_coder = 1;
  double tmo_key = 0.18;
  double tmo_white = 0.0;
  double tmo_gamma = 2.2;
};

int cmd_encode(const EncodeArgs& args) {
  const ImagePtr image = read_image(args.input);
  hdll_encode_options options;
  hdll_encode_options_default(&options);
  options.quality = args.quality;
  options.sigma = args.sigma;
  options.mode = args.no_slrme        ? HDLL_MODE_NO_SLRME
                 : args.global_slrme ? HDLL_MODE_GLOBAL_SLRME
                                     : HDLL_MODE_SLRME;
  options.lossy_coder = args.lossy_coder;
  options.lossless_coder = args.lossless_coder;
  options.tmo_key = args.tmo_key;
  options.tmo_white = args.tmo_white;
  options.tmo_gamma = args.tmo_gamma;

  hdll_stream* raw = nullptr;
  hdll_encode_stats stats{};
  check(hdll_encode(image.get(), &options, &raw, &stats), "encode");
  const StreamPtr stream(raw);
  check(hdll_stream_write_file(stream.get(), args.output.c_str()), args.output);

  hdll_stream_info info{};
  check(hdll_stream_info_get(stream.get(), &info), "info");
  std::cout << "encoded " << args.input << " -> " << args.output << " " << info.width << "x"
            << info.height << " mode=" << mode_name(options.mode) << " q=" << args.quality
            << " bytes=" << info.total_bytes << " bpp_total=" << fixed(info.bpp_total, 4)
            << " bpp_base=" << fixed(info.bpp_base, 4)
            << " bpp_enh=" << fixed(info.bpp_enhancement, 4)
            << " bpp_payloads=" << fixed(info.bpp_payloads, 4)
            << " table_entries=" << info.table_entries
            << " tonemap_ms=" << fixed(stats.tonemap_ms, 2)
            << " base_ms=" << fixed(stats.base_layer_ms, 2)
            << " filter_ms=" << fixed(stats.prefilter_ms, 2) << " fit_ms=" << fixed(stats.fit_ms, 2)
            << " estimate_ms=" << fixed(stats.estimate_ms, 2)
            << " enhancement_ms=" << fixed(stats.enhancement_ms, 2)
            << " total_ms=" << fixed(stats.total_ms, 2) << "\n";
  return kExitOk;
}

struct DecodeArgs {
  std::string input;
  std::string sdr;
  std::string hdr;
};

int cmd_decode(const DecodeArgs& args) {
  if (args.sdr.empty() && args.hdr.empty()) {
    std::cerr << "decode: request at least one of --sdr or --hdr\n";
    return kExitUsage;
  }
  if (args.hdr.empty()) {
    // Base layer only; enhancement sections are never parsed.
    hdll_sdr* sdr = nullptr;
    check(hdll_decode_sdr_file(args.input.c_str(), &sdr), args.input);
    const SdrPtr owned(sdr);
    check(hdll_sdr_write_ppm(sdr, args.sdr.c_str()), args.sdr);
    return kExitOk;
  }
  const StreamPtr stream = read_stream(args.input);
  if (!args.sdr.empty()) {
    hdll_sdr* sdr = nullptr;
    check(hdll_decode_sdr(stream.get(), &sdr), "decode sdr");
    const SdrPtr owned(sdr);
    check(hdll_sdr_write_ppm(sdr, args.sdr.c_str()), args.sdr);
  }
  hdll_image* image = nullptr;
  check(hdll_decode_hdr(stream.get(), &image, nullptr), "decode hdr");
  const ImagePtr owned(image);
  check(hdll_image_write_file(image, args.hdr.c_str(), 1), args.hdr);
  return kExitOk;
}

void print_histogram(const std::uint64_t (&histogram)[256]) {
  int bins = 0;
  for (int e = 0; e < 256; ++e) bins += histogram[e] != 0;
  std::cout << "exponent histogram (" << bins << " bins):\n";
  for (int e = 0; e < 256; ++e) {
    if (histogram[e] != 0) std::cout << "  E=" << e << " " << histogram[e] << "\n";
  }
}

int inspect_stream(const std::string& path) {
  const StreamPtr stream = read_stream(path);
  hdll_stream_info info{};
  check(hdll_stream_info_get(stream.get(), &info), "info");
  std::cout << "format: hll v" << int(info.version) << "\n"
            << "size: " << info.width << "x" << info.height << "\n"
            << "flags: 0x" << std::hex << int(info.flags) << std::dec
            << ((info.flags & 1) ? " slrme" : " no-slrme") << ((info.flags & 2) ? " global" : "")
            << "\n"
            << "lossy coder: " << int(info.lossy_coder) << " quality " << int(info.quality) << "\n"
            << "lossless coder: " << int(info.lossless_coder) << "\n"
            << "sigma: " << info.sigma_milli / 1000.0 << "\n"
            << "sections:\n"
            << "  header " << info.header_bytes << " (regression table " << info.table_bytes
            << ")\n"
            << "  base " << info.base_bytes << "\n"
            << "  exponent " << info.exponent_bytes << "\n"
            << "  residual_r " << info.residual_bytes[0] << "\n"
            << "  residual_g " << info.residual_bytes[1] << "\n"
            << "  residual_b " << info.residual_bytes[2] << "\n"
            << "  total " << info.total_bytes << "\n"
            << "bpp: total " << fixed(info.bpp_total, 4) << " base " << fixed(info.bpp_base, 4)
            << " enhancement " << fixed(info.bpp_enhancement, 4) << " payloads "
            << fixed(info.bpp_payloads, 4) << "\n";

  std::cout << "regression table: " << info.table_entries << " entries\n";
  for (int c = 0; c < 3; ++c) {
    std::size_t count = 0;
    float a_min = 0, a_max = 0, b_min = 0, b_max = 0;
    for (std::size_t i = 0; i < info.table_entries; ++i) {
      hdll_table_entry e{};
      check(hdll_stream_table_entry(stream.get(), i, &e), "table");
      if (e.channel != c) continue;
      if (count == 0) {
        a_min = a_max = e.a;
        b_min = b_max = e.b;
      }
      a_min = std::min(a_min, e.a);
      a_max = std::max(a_max, e.a);
      b_min = std::min(b_min, e.b);
      b_max = std::max(b_max, e.b);
      ++count;
    }
    std::cout << "  " << "RGB"[c] << ": " << count << " entries";
    if (count > 0) std::cout << " a in [" << a_min << ", " << a_max << "] b in [" << b_min << ", " << b_max << "]";
    std::cout << "\n";
  }
  if (info.has_enhancement) {
    std::uint64_t histogram[256] = {};
    check(hdll_stream_exponent_histogram(stream.get(), histogram), "exponent plane");
    print_histogram(histogram);
  } else {
    std::cout << "enhancement layer: absent\n";
  }
  return kExitOk;
}

int inspect_image(const std::string& path) {
  const ImagePtr image = read_image(path);
  std::cout << "format: radiance\n"
            << "size: " << hdll_image_width(image.get()) << "x" << hdll_image_height(image.get())
            << "\n"
            << "header vars: " << hdll_image_header_var_count(image.get()) << "\n";
  std::uint64_t histogram[256] = {};
  check(hdll_image_exponent_histogram(image.get(), histogram), "histogram");
  print_histogram(histogram);
  return kExitOk;
}

int cmd_inspect(const std::string& path) {
  if (!fs::exists(path)) throw Failure{path + ": no such file"};
  return is_stream_file(path) ? inspect_stream(path) : inspect_image(path);
}

struct BenchArgs {
  std::string corpus;
  std::string modes = "no-slrme,slrme,global-slrme";
  int quality = 85;
  double sigma = 1.0;
  int repeat = 1;
  std::string out = "results.csv";
};

struct BenchRecord {
  std::string image_id;
  hdll_mode mode;
  int quality;
  double bpp_total;
  double bpp_base;
  double bpp_enh;
  double bpp_payloads;
  double encode_ms;
  double decode_ms;
  double table_entries;  // fractional only in averages rows
  bool lossless_ok;
};

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

BenchRecord bench_one(const std::string& id, const hdll_image* image, hdll_mode mode,
                      const BenchArgs& args) {
  hdll_encode_options options;
  hdll_encode_options_default(&options);
  options.quality = args.quality;
  options.sigma = args.sigma;
  options.mode = mode;

  BenchRecord r{id, mode, args.quality, 0, 0, 0, 0, 0, 0, 0, false};
  BufferPtr bytes;
  for (int i = 0; i < args.repeat; ++i) {
    hdll_stream* raw = nullptr;
    const auto t = std::chrono::steady_clock::now();
    check(hdll_encode(image, &options, &raw, nullptr), id + " encode");
    const double ms = ms_since(t);
    r.encode_ms = i == 0 ? ms : std::min(r.encode_ms, ms);
    const StreamPtr stream(raw);
    if (i == 0) {
      hdll_buffer* buffer = nullptr;
      check(hdll_stream_serialize(stream.get(), &buffer), id + " serialize");
      bytes.reset(buffer);
      hdll_stream_info info{};
      check(hdll_stream_info_get(stream.get(), &info), id + " info");
      r.bpp_total = info.bpp_total;
      r.bpp_base = info.bpp_base;
      r.bpp_enh = info.bpp_enhancement;
      r.bpp_payloads = info.bpp_payloads;
      r.table_entries = static_cast<double>(info.table_entries);
    }
  }

  // Decode from the serialized bytes so the round trip covers the file format.
  const auto t = std::chrono::steady_clock::now();
  hdll_stream* parsed = nullptr;
  check(hdll_stream_read_memory(hdll_buffer_data(bytes.get()), hdll_buffer_size(bytes.get()), &parsed),
        id + " parse");
  const StreamPtr stream(parsed);
  hdll_image* decoded = nullptr;
  check(hdll_decode_hdr(stream.get(), &decoded, nullptr), id + " decode");
  r.decode_ms = ms_since(t);
  const ImagePtr owned(decoded);
  r.lossless_ok = hdll_image_equal(image, decoded) != 0;
  return r;
}

void write_row(std::ostream& out, const BenchRecord& r) {
  out << r.image_id << "," << mode_name(r.mode) << "," << r.quality << "," << num(r.bpp_total)
      << "," << num(r.bpp_base) << "," << num(r.bpp_enh) << "," << num(r.bpp_payloads) << ","
      << num(r.encode_ms) << "," << num(r.decode_ms) << "," << num(r.table_entries) << ","
      << (r.lossless_ok ? "true" : "false") << "\n";
}

int cmd_bench(const BenchArgs& args) {
  std::vector<hdll_mode> modes;
  std::stringstream list(args.modes);
  for (std::string name; std::getline(list, name, ',');) modes.push_back(parse_mode(name));
  if (modes.empty()) throw Failure{"no modes requested"};

  fs::path corpus = args.corpus;
  fs::path scratch;
  if (corpus.empty()) {
    scratch = fs::temp_directory_path() / ("hdll-bench-" + std::to_string(::getpid()));
    std::size_t count = 0;
    check(hdll_synthetic_corpus_write(scratch.string().c_str(), 1, 256, &count), "synthetic corpus");
    corpus = scratch;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".hdr") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Failure{corpus.string() + ": no .hdr files"};

  std::vector<BenchRecord> records;
  for (const fs::path& file : files) {
    const ImagePtr image = read_image(file.string());
    for (hdll_mode mode : modes) {
      BenchRecord r = bench_one(file.stem().string(), image.get(), mode, args);
      if (!r.lossless_ok) {
        throw Failure{file.string() + " (" + mode_name(mode) + "): decoded image differs from the input"};
      }
      records.push_back(std::move(r));
    }
  }
  if (!scratch.empty()) fs::remove_all(scratch);

  std::ofstream csv(args.out, std::ios::trunc);
  if (!csv) throw Failure{args.out + ": cannot create"};
  csv << "image_id,mode,quality,bpp_total,bpp_base,bpp_enh,bpp_payloads,encode_ms,decode_ms,"
         "table_entries,lossless_ok\n";
  for (const BenchRecord& r : records) write_row(csv, r);

  std::map<hdll_mode, BenchRecord> averages;
  for (hdll_mode mode : modes) {
    BenchRecord avg{"average", mode, args.quality, 0, 0, 0, 0, 0, 0, 0, true};
    double n = 0;
    for (const BenchRecord& r : records) {
      if (r.mode != mode) continue;
      avg.bpp_total += r.bpp_total;
      avg.bpp_base += r.bpp_base;
      avg.bpp_enh += r.bpp_enh;
      avg.bpp_payloads += r.bpp_payloads;
      avg.encode_ms += r.encode_ms;
      avg.decode_ms += r.decode_ms;
      avg.table_entries += r.table_entries;
      ++n;
    }
    avg.bpp_total /= n;
    avg.bpp_base /= n;
    avg.bpp_enh /= n;
    avg.bpp_payloads /= n;
    avg.encode_ms /= n;
    avg.decode_ms /= n;
    avg.table_entries /= n;
    write_row(csv, avg);
    averages.emplace(mode, avg);
  }
  if (!csv) throw Failure{args.out + ": write failed"};

  std::cout << files.size() << " images, quality " << args.quality << ", all round trips lossless\n";
  for (const auto& [mode, avg] : averages) {
    std::cout << "  " << mode_name(mode) << ": avg bpp " << fixed(avg.bpp_total, 4)
              << " (payloads " << fixed(avg.bpp_payloads, 4) << "), avg encode "
              << fixed(avg.encode_ms, 2) << " ms, avg decode " << fixed(avg.decode_ms, 2) << " ms\n";
  }
  if (averages.count(HDLL_MODE_SLRME) && averages.count(HDLL_MODE_NO_SLRME)) {
    const BenchRecord& on = averages.at(HDLL_MODE_SLRME);
    const BenchRecord& off = averages.at(HDLL_MODE_NO_SLRME);
    std::cout << "  slrme vs no-slrme: bpp change "
              << fixed(100.0 * (on.bpp_total - off.bpp_total) / off.bpp_total, 2)
              << "%, encode time ratio " << fixed(on.encode_ms / off.encode_ms, 3) << "\n";
  }
  std::cout << "wrote " << args.out << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::uint32_t size = 256;
};

int cmd_synth(const SynthArgs& args) {
  std::size_t count = 0;
  check(hdll_synthetic_corpus_write(args.out.c_str(), args.seed, args.size, &count), args.out);
  std::cout << "wrote " << count << " images to " << args.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-layer lossless codec for Radiance HDR images"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hdll_version()));

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a .hdr file into a dual-layer .hll stream");
  encode->add_option("--input", enc.input, "Radiance .hdr input")->required();
  encode->add_option("--output", enc.output, ".hll output")->required();
  encode->add_option("--quality", enc.quality, "Base-layer quality")->check(CLI::Range(1, 100))->capture_default_str();
  encode->add_option("--sigma", enc.sigma, "Restoration filter sigma (0 disables)")->check(CLI::Range(0.0, 65.535))->capture_default_str();
  auto* no_slrme = encode->add_flag("--no-slrme", enc.no_slrme, "Residuals against the decoded SDR image");
  encode->add_flag("--global-slrme", enc.global_slrme, "One regression per channel over all exponents")->excludes(no_slrme);
  encode->add_option("--lossy-coder", enc.lossy_coder, "Base-layer coder id")->capture_default_str();
  encode->add_option("--lossless-coder", enc.lossless_coder, "Enhancement coder id")->capture_default_str();
  encode->add_option("--tmo-key", enc.tmo_key, "Tone mapping key")->capture_default_str();
  encode->add_option("--tmo-white", enc.tmo_white, "Tone mapping white point (0 = auto)")->capture_default_str();
  encode->add_option("--tmo-gamma", enc.tmo_gamma, "Display gamma")->capture_default_str();

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Decode an .hll stream to SDR and/or HDR");
  decode->add_option("--input", dec.input, ".hll input")->required();
  decode->add_option("--sdr", dec.sdr, "Binary PPM output of the base layer");
  decode->add_option("--hdr", dec.hdr, "Radiance .hdr output of the lossless reconstruction");

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Describe an .hll stream or .hdr image");
  inspect->add_option("--input", inspect_path, ".hll or .hdr file")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Encode, decode and verify a corpus; write a CSV");
  bench->add_option("--corpus", bench_args.corpus, "Directory of .hdr files (default: synthetic corpus)");
  bench->add_option("--modes", bench_args.modes, "Comma-separated modes")->capture_default_str();
  bench->add_option("--quality", bench_args.quality, "Base-layer quality")->check(CLI::Range(1, 100))->capture_default_str();
  bench->add_option("--sigma", bench_args.sigma, "Restoration filter sigma")->check(CLI::Range(0.0, 65.535))->capture_default_str();
  bench->add_option("--repeat", bench_args.repeat, "Encodes per image and mode; the fastest is kept")->check(CLI::Range(1, 100))->capture_default_str();
  bench->add_option("--out", bench_args.out, "CSV output")->capture_default_str();

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write the deterministic synthetic test corpus");
  synth->add_option("--out", synth_args.out, "Output directory")->required();
  synth->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();
  synth->add_option("--size", synth_args.size, "Image width and height")->check(CLI::Range(1u, 16384u))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*encode) return cmd_encode(enc);
    if (*decode) return cmd_decode(dec);
    if (*inspect) return cmd_inspect(inspect_path);
    if (*bench) return cmd_bench(bench_args);
    if (*synth) return cmd_synth(synth_args);
  } catch (const Failure& f) {
    std::cerr << "hdll: " << f.message << "\n";
    return kExitFailure;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "hdll: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hdll: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
