// tests/test_signal_io.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <fstream>
#include <random>

#include "adctnet/signal_io.h"
#include "test_util.h"

using namespace adct;
using namespace adct_test;

TEST_CASE("load_wav scales 16-bit PCM by 1/32768") {
  const auto dir = scratch_dir("wav_pcm16");
  write_wav_pcm16(dir / "a.wav", {0, 16384, -32768}, 44100, 1);
  const Signal s = load_wav(dir / "a.wav");
  CHECK(s.sample_rate == 44100);
  REQUIRE(s.samples.size() == 3);
  CHECK(s.samples[0] == 0.0);
  CHECK(s.samples[1] == 0.5);
  CHECK(s.samples[2] == -1.0);
}

TEST_CASE("load_wav downmixes stereo by averaging") {
  const auto dir = scratch_dir("wav_stereo");
  write_wav_float32(dir / "st.wav", {1.0f, 0.0f, 0.5f, 0.5f}, 8000, 2);
  const Signal s = load_wav(dir / "st.wav");
  REQUIRE(s.samples.size() == 2);
  CHECK(s.samples[0] == 0.5);
  CHECK(s.samples[1] == 0.5);

  write_wav_pcm16(dir / "st16.wav", {16384, -16384, 100, 200}, 8000, 2);
  const Signal s16 = load_wav(dir / "st16.wav");
  REQUIRE(s16.samples.size() == 2);
  CHECK(s16.samples[0] == 0.0);
  CHECK(s16.samples[1] == doctest::Approx(150.0 / 32768.0).epsilon(1e-15));
}

TEST_CASE("a 3-second 44100 Hz file decodes to 132300 samples") {
  const auto dir = scratch_dir("wav_len");
  std::vector<std::int16_t> pcm(3 * 44100, 123);
  write_wav_pcm16(dir / "len.wav", pcm, 44100, 1);
  CHECK(load_wav(dir / "len.wav").samples.size() == 132300);
}

TEST_CASE("16-bit samples survive a write/load/write round trip") {
  const auto dir = scratch_dir("wav_roundtrip");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-32768, 32767);
  std::vector<std::int16_t> pcm(777);
  for (auto &v : pcm) v = static_cast<std::int16_t>(dist(rng));
  write_wav_pcm16(dir / "r.wav", pcm, 22050, 1);
  const Signal s = load_wav(dir / "r.wav");
  REQUIRE(s.samples.size() == pcm.size());
  for (std::size_t i = 0; i < pcm.size(); ++i)
    CHECK(s.samples[i] * 32768.0 == static_cast<double>(pcm[i]));
}

TEST_CASE("load_wav rejects malformed and unsupported input") {
  const auto dir = scratch_dir("wav_bad");
  {
    std::ofstream out(dir / "junk.wav", std::ios::binary);
    out << "JUNKJUNKJUNKJUNK";
  }
  CHECK_THROWS_AS(load_wav(dir / "junk.wav"), FormatError);
  CHECK_THROWS_AS(load_wav(dir / "missing.wav"), DataError);

  // ADPCM format tag.
  {
    std::string body = "WAVE";
    body += "fmt ";
    append_le32(body, 16);
    append_le16(body, 2);  // ADPCM
    append_le16(body, 1);
    append_le32(body, 8000);
    append_le32(body, 8000);
    append_le16(body, 1);
    append_le16(body, 4);
    body += "data";
    append_le32(body, 4);
    body += std::string(4, '\0');
    std::string file = "RIFF";
    append_le32(file, static_cast<std::uint32_t>(body.size()));
    file += body;
    std::ofstream out(dir / "adpcm.wav", std::ios::binary);
    out.write(file.data(), static_cast<std::streamsize>(file.size()));
  }
  CHECK_THROWS_AS(load_wav(dir / "adpcm.wav"), UnsupportedFormatError);

  // Zero-length data chunk.
  write_wav_pcm16(dir / "empty.wav", {}, 8000, 1);
  CHECK_THROWS_AS(load_wav(dir / "empty.wav"), DataError);
}

TEST_CASE("feature files round-trip bit-exactly") {
  const auto dir = scratch_dir("adf");

  // Empty 0x3 matrix: 17-byte header, no payload.
  FeatureMatrix empty(0, 3, 9);
  write_features(dir / "empty.adf", empty);
  CHECK(std::filesystem::file_size(dir / "empty.adf") == 17);
  const FeatureMatrix empty_back = read_features(dir / "empty.adf");
  CHECK(empty_back.rows() == 0);
  CHECK(empty_back.cols() == 3);
  CHECK(empty_back.frame_hop == 9);

  FeatureMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  write_features(dir / "m.adf", m);
  CHECK(read_features(dir / "m.adf").data() == m.data());

  // Denormals and signed zero must survive byte-for-byte.
  FeatureMatrix tricky(1, 3, 2);
  tricky.at(0, 0) = 1e-300;
  tricky.at(0, 1) = -0.0;
  tricky.at(0, 2) = -1e-300;
  tricky.center_freqs = {40.0, 80.0, 160.0};
  write_features(dir / "tricky.adf", tricky);
  const FeatureMatrix back = read_features(dir / "tricky.adf");
  REQUIRE(back.data().size() == tricky.data().size());
  CHECK(std::memcmp(back.data().data(), tricky.data().data(),
                    sizeof(double) * tricky.data().size()) == 0);
  CHECK(back.center_freqs == tricky.center_freqs);
}

TEST_CASE("random feature matrices round-trip bit-exactly") {
  const auto dir = scratch_dir("adf_prop");
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  std::uniform_int_distribution<std::size_t> rows(0, 12), cols(1, 9);
  for (int trial = 0; trial < 25; ++trial) {
    FeatureMatrix m(rows(rng), cols(rng),
                    static_cast<std::uint32_t>(1 + trial));
    for (double &v : m.data()) v = value(rng);
    if (trial % 2 == 0) {
      m.center_freqs.resize(m.cols());
      for (double &f : m.center_freqs) f = std::abs(value(rng));
    }
    const auto path = dir / ("p" + std::to_string(trial) + ".adf");
    write_features(path, m);
    const FeatureMatrix back = read_features(path);
    CHECK(back.rows() == m.rows());
    CHECK(back.cols() == m.cols());
    CHECK(back.frame_hop == m.frame_hop);
    CHECK(back.center_freqs == m.center_freqs);
    CHECK(std::memcmp(back.data().data(), m.data().data(),
                      sizeof(double) * m.data().size()) == 0);
  }
}

TEST_CASE("feature reader rejects bad magic and truncation") {
  const auto dir = scratch_dir("adf_bad");
  {
    std::ofstream out(dir / "bad.adf", std::ios::binary);
    out << "NOPExxxxxxxxxxxxxxxxx";
  }
  CHECK_THROWS_AS(read_features(dir / "bad.adf"), FormatError);

  FeatureMatrix m(3, 3);
  write_features(dir / "full.adf", m);
  const auto size = std::filesystem::file_size(dir / "full.adf");
  std::filesystem::resize_file(dir / "full.adf", size - 5);
  CHECK_THROWS_AS(read_features(dir / "full.adf"), FormatError);

  CHECK_THROWS_AS(write_features(dir / "nan.adf",
                                 [] {
                                   FeatureMatrix bad(1, 1);
                                   bad.at(0, 0) =
                                       std::numeric_limits<double>::quiet_NaN();
                                   return bad;
                                 }()),
                  ArgumentError);
}

TEST_CASE("manifest parsing") {
  const auto dir = scratch_dir("manifest");
  {
    std::ofstream out(dir / "ok.tsv");
    out << "# comment\n";
    out << "b.wav\tbird2\n";
    out << "\n";
    out << "a.wav\tbird1\n";
  }
  const DatasetManifest m = load_manifest(dir / "ok.tsv");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].path == "b.wav");  // file order preserved
  CHECK(m.class_names == std::vector<std::string>{"bird1", "bird2"});
  CHECK(m.label_index("bird2") == 1);
  CHECK(m.label_index("nope") == -1);
  CHECK(m.base_dir == dir);

  {
    std::ofstream out(dir / "comments.tsv");
    out << "# only\n# comments\n";
  }
  CHECK_THROWS_AS(load_manifest(dir / "comments.tsv"), DataError);

  {
    std::ofstream out(dir / "notab.tsv");
    out << "a.wav bird1\n";
  }
  CHECK_THROWS_WITH_AS(load_manifest(dir / "notab.tsv"),
                       doctest::Contains(":1:"), ParseError);

  {
    std::ofstream out(dir / "dup.tsv");
    out << "a.wav\tbird1\na.wav\tbird2\n";
  }
  CHECK_THROWS_AS(load_manifest(dir / "dup.tsv"), ParseError);

  {
    std::ofstream out(dir / "oneclass.tsv");
    out << "a.wav\tbird1\nb.wav\tbird1\n";
  }
  CHECK_THROWS_AS(load_manifest(dir / "oneclass.tsv"), DataError);
}

TEST_CASE("manifest with 200 entries and 4 labels") {
  const auto dir = scratch_dir("manifest200");
  {
    std::ofstream out(dir / "m.tsv");
    const char *labels[4] = {"a", "b", "c", "d"};
    for (int i = 0; i < 200; ++i)
      out << "clip" << i << ".wav\t" << labels[i % 4] << "\n";
  }
  const DatasetManifest m = load_manifest(dir / "m.tsv");
  CHECK(m.entries.size() == 200);
  CHECK(m.class_names.size() == 4);
}
