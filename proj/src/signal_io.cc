// src/signal_io.cc

// Copyright 2026  The adctnet authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "adctnet/signal_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "little-endian host required by the binary formats");

namespace adct {

namespace {

// ---------------------------------------------------------------------------
// Little-endian primitives

template <typename T>
T read_le(std::istream &in, const char *what) {
  T value{};
  in.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!in)
    throw FormatError(std::string("truncated input while reading ") + what);
  return value;
}

template <typename T>
void write_le(std::ostream &out, T value) {
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

struct WavFormat {
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

int DatasetManifest::label_index(const std::string &label) const {
  auto it = std::lower_bound(class_names.begin(), class_names.end(), label);
  if (it == class_names.end() || *it != label) return -1;
  return static_cast<int>(it - class_names.begin());
}

Signal load_wav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());

  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0)
    throw FormatError(path.string() + ": not a RIFF file");
  (void)read_le<std::uint32_t>(in, "RIFF size");
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0)
    throw FormatError(path.string() + ": RIFF without WAVE form");

  WavFormat fmt;
  bool have_fmt = false;
  std::vector<char> payload;
  bool have_data = false;

  while (in.peek() != EOF) {
    in.read(tag, 4);
    if (!in) throw FormatError(path.string() + ": truncated chunk header");
    const auto chunk_size = read_le<std::uint32_t>(in, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_size < 16)
        throw FormatError(path.string() + ": fmt chunk too small");
      fmt.audio_format = read_le<std::uint16_t>(in, "audio format");
      fmt.channels = read_le<std::uint16_t>(in, "channel count");
      fmt.sample_rate = read_le<std::uint32_t>(in, "sample rate");
      (void)read_le<std::uint32_t>(in, "byte rate");
      (void)read_le<std::uint16_t>(in, "block align");
      fmt.bits_per_sample = read_le<std::uint16_t>(in, "bits per sample");
      in.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      payload.resize(chunk_size);
      if (chunk_size > 0) {
        in.read(payload.data(), chunk_size);
        if (!in) throw FormatError(path.string() + ": truncated data chunk");
      }
      have_data = true;
    } else {
      in.seekg(chunk_size, std::ios::cur);
      if (!in) throw FormatError(path.string() + ": truncated chunk");
    }
    if (chunk_size % 2 == 1) in.seekg(1, std::ios::cur);  // pad byte
  }

  if (!have_fmt) throw FormatError(path.string() + ": missing fmt chunk");
  if (!have_data) throw FormatError(path.string() + ": missing data chunk");
  if (fmt.sample_rate == 0)
    throw FormatError(path.string() + ": zero sample rate");
  if (fmt.channels != 1 && fmt.channels != 2)
    throw UnsupportedFormatError(path.string() + ": " +
                                 std::to_string(fmt.channels) +
                                 " channels (only mono/stereo handled)");

  const bool pcm16 = fmt.audio_format == 1 && fmt.bits_per_sample == 16;
  const bool float32 = fmt.audio_format == 3 && fmt.bits_per_sample == 32;
  if (!pcm16 && !float32)
    throw UnsupportedFormatError(
        path.string() + ": format tag " + std::to_string(fmt.audio_format) +
        " at " + std::to_string(fmt.bits_per_sample) +
        " bits (PCM16 or float32 required)");

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (payload.empty() || payload.size() < frame_bytes)
    throw DataError(path.string() + ": empty data chunk");
  const std::size_t n_frames = payload.size() / frame_bytes;

  Signal signal;
  signal.sample_rate = fmt.sample_rate;
  signal.samples.resize(n_frames);
  const char *p = payload.data();
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < fmt.channels; ++c) {
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        p += 2;
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        p += 4;
        acc += static_cast<double>(v);
      }
    }
    signal.samples[i] = acc / fmt.channels;
  }
  return signal;
}

void write_features(const std::filesystem::path &path,
                    const FeatureMatrix &fm) {
  if (fm.cols() == 0)
    throw ArgumentError("write_features: matrix must have columns");
  if (!fm.center_freqs.empty() && fm.center_freqs.size() != fm.cols())
    throw ArgumentError("write_features: center_freqs size mismatch");
  for (double v : fm.data())
    if (!std::isfinite(v))
      throw ArgumentError("write_features: non-finite entry");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write("ADF1", 4);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(fm.rows()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(fm.cols()));
  write_le<std::uint32_t>(out, fm.frame_hop);
  const std::uint8_t has_freqs = fm.center_freqs.empty() ? 0 : 1;
  write_le<std::uint8_t>(out, has_freqs);
  if (has_freqs)
    out.write(reinterpret_cast<const char *>(fm.center_freqs.data()),
              static_cast<std::streamsize>(sizeof(double) * fm.cols()));
  out.write(reinterpret_cast<const char *>(fm.data().data()),
            static_cast<std::streamsize>(sizeof(double) * fm.data().size()));
  if (!out) throw DataError("write failed: " + path.string());
}

FeatureMatrix read_features(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "ADF1", 4) != 0)
    throw FormatError(path.string() + ": bad magic (expected ADF1)");
  const auto rows = read_le<std::uint32_t>(in, "rows");
  const auto cols = read_le<std::uint32_t>(in, "cols");
  const auto hop = read_le<std::uint32_t>(in, "frame_hop");
  const auto has_freqs = read_le<std::uint8_t>(in, "freqs flag");
  if (cols == 0) throw FormatError(path.string() + ": zero columns");

  FeatureMatrix fm(rows, cols, hop);
  if (has_freqs) {
    fm.center_freqs.resize(cols);
    in.read(reinterpret_cast<char *>(fm.center_freqs.data()),
            static_cast<std::streamsize>(sizeof(double) * cols));
    if (!in)
      throw FormatError(path.string() + ": truncated center frequencies");
  }
  in.read(reinterpret_cast<char *>(fm.data().data()),
          static_cast<std::streamsize>(sizeof(double) * fm.data().size()));
  if (!in) throw FormatError(path.string() + ": truncated payload");
  // Exactly one matrix per file.
  in.peek();
  if (!in.eof())
    throw FormatError(path.string() + ": trailing bytes after payload");
  return fm;
}

DatasetManifest load_manifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  DatasetManifest manifest;
  manifest.base_dir = path.has_parent_path() ? path.parent_path()
                                             : std::filesystem::path(".");
  std::set<std::string> seen_paths;
  std::set<std::string> labels;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() ||
        line.find_first_not_of(" \t") == std::string::npos ||
        line[line.find_first_not_of(" \t")] == '#')
      continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected <path>TAB<label>");
    std::string file = line.substr(0, tab);
    std::string label = line.substr(tab + 1);
    if (file.empty() || label.empty())
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": empty path or label");
    if (!seen_paths.insert(file).second)
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": duplicate file path " + file);
    labels.insert(label);
    manifest.entries.push_back({std::move(file), std::move(label)});
  }

  if (manifest.entries.empty())
    throw DataError(path.string() + ": empty manifest");
  if (labels.size() < 2)
    throw DataError(path.string() + ": need at least 2 distinct classes");
  manifest.class_names.assign(labels.begin(), labels.end());
  return manifest;
}

}  // namespace adct
