// tests/test_adaptive.cc

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

#include <cmath>
#include <numbers>
#include <random>

#include "adctnet/adaptive.h"
#include "adctnet/baselines.h"
#include "adctnet/stdct.h"
#include "test_util.h"

using namespace adct;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_signal(std::size_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(len);
  for (double &v : x) v = dist(rng);
  return x;
}

double max_abs(const std::vector<double> &v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Straight-line evaluation of one adaptive coefficient: recomputes lengths,
// window, normalization, and center alignment from their definitions.
double reference_cell(const std::vector<double> &x, const AdctConfig &cfg,
                      std::size_t m, std::size_t k) {
  const double q = 1.0 / (std::pow(2.0, 1.0 / cfg.grid.bins_per_octave) - 1.0);
  auto length_of = [&](std::size_t bin) {
    const double ideal = q * cfg.sample_rate / cfg.grid.freqs[bin];
    return static_cast<std::size_t>(std::clamp<long long>(
        std::llround(ideal), static_cast<long long>(cfg.min_len),
        static_cast<long long>(cfg.max_len)));
  };
  auto window_at = [&](std::size_t len, std::size_t i) {
    if (len == 1 || cfg.window == WindowKind::kRectangular) return 1.0;
    const double c = std::cos(2.0 * kPi * i / (double)(len - 1));
    return cfg.window == WindowKind::kHamming ? 0.54 - 0.46 * c
                                              : 0.5 - 0.5 * c;
  };
  auto window_sum = [&](std::size_t len) {
    double s = 0.0;
    std::size_t lo = 0, hi = len - 1;
    // Mirror of the library's symmetry enforcement.
    for (std::size_t i = 0; i < len; ++i)
      s += window_at(len, std::min(i, len - 1 - i));
    (void)lo;
    (void)hi;
    return s;
  };

  const std::size_t longest = length_of(0);
  const std::size_t n_k = length_of(k);
  const double scale =
      cfg.normalize_windows ? window_sum(longest) / window_sum(n_k) : 1.0;
  const std::size_t start = m * cfg.hop + (longest - n_k) / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < n_k; ++i) {
    const double h = window_at(n_k, std::min(i, n_k - 1 - i)) * scale;
    acc += x[start + i] * h *
           std::cos(2.0 * kPi * cfg.grid.freqs[k] * ((double)i + 0.5) /
                    cfg.sample_rate);
  }
  return acc;
}

}  // namespace

TEST_CASE("adaptive_stdct of silence is zero and carries channel metadata") {
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(200.0, 2000.0, 4, 8000.0);
  cfg.sample_rate = 8000.0;
  cfg.hop = 32;
  cfg.max_len = 512;
  std::vector<double> x(2000, 0.0);
  const FeatureMatrix out = adaptive_stdct(x, cfg);
  CHECK(out.cols() == cfg.grid.bins());
  CHECK(out.center_freqs == cfg.grid.freqs);
  CHECK(max_abs(out.data()) == 0.0);
  CHECK(out.frame_hop == 32);
}

TEST_CASE("adaptive_stdct matches the straight-line reference") {
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(150.0, 1500.0, 3, 8000.0);
  cfg.sample_rate = 8000.0;
  cfg.hop = 16;
  cfg.min_len = 4;
  cfg.max_len = 300;
  const auto x = random_signal(1200, 77);
  const FeatureMatrix out = adaptive_stdct(x, cfg);
  for (std::size_t m = 0; m < out.rows(); m += 5)
    for (std::size_t k = 0; k < out.cols(); ++k)
      CHECK(out.at(m, k) ==
            doctest::Approx(reference_cell(x, cfg, m, k)).epsilon(1e-12));
}

TEST_CASE("interior grid tones land on their own channel") {
  const double fs = 16000.0;
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(200.0, 3200.0, 6, fs);
  cfg.sample_rate = fs;
  cfg.hop = 128;
  cfg.min_len = 2;
  cfg.max_len = 1u << 20;  // unclamped
  const std::size_t bins = cfg.grid.bins();
  REQUIRE(bins >= 8);

  std::size_t correct = 0, interior = 0;
  for (std::size_t j = 1; j + 1 < bins; ++j) {
    ++interior;
    const auto x =
        adct_test::tone(cfg.grid.freqs[j], 0.35, fs, 0.8, 0.3 * (double)j);
    const FeatureMatrix out = adaptive_stdct(x, cfg);
    std::vector<double> energy(bins, 0.0);
    for (std::size_t m = 0; m < out.rows(); ++m)
      for (std::size_t k = 0; k < bins; ++k)
        energy[k] += out.at(m, k) * out.at(m, k);
    std::size_t best = 0;
    for (std::size_t k = 1; k < bins; ++k)
      if (energy[k] > energy[best]) best = k;
    if (best == j) ++correct;
  }
  CHECK(correct == interior);
}

TEST_CASE("the 40 Hz to 5500 Hz grid at b=12 yields 85 channels") {
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(40.0, 5500.0, 12, 44100.0);
  cfg.sample_rate = 44100.0;
  cfg.hop = 512;
  cfg.max_len = 4096;
  const auto x = random_signal(4096 + 512 * 3, 9);
  const FeatureMatrix out = adaptive_stdct(x, cfg);
  CHECK(out.cols() == 85);
  CHECK(out.rows() == 4);
}

TEST_CASE("adaptive_stdct is linear in the signal") {
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(300.0, 2400.0, 4, 8000.0);
  cfg.sample_rate = 8000.0;
  cfg.hop = 64;
  cfg.max_len = 256;
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_signal(900, 1000 + trial);
    const auto y = random_signal(900, 2000 + trial);
    const double a = coef(rng), b = coef(rng);
    std::vector<double> mix(900);
    for (std::size_t i = 0; i < 900; ++i) mix[i] = a * x[i] + b * y[i];
    const FeatureMatrix fx = adaptive_stdct(x, cfg);
    const FeatureMatrix fy = adaptive_stdct(y, cfg);
    const FeatureMatrix fm = adaptive_stdct(mix, cfg);
    const double scale = std::max(1.0, max_abs(fm.data()));
    for (std::size_t i = 0; i < fm.data().size(); ++i)
      CHECK(std::abs(fm.data()[i] -
                     (a * fx.data()[i] + b * fy.data()[i])) <= 1e-10 * scale);
  }
}

TEST_CASE("a linear grid with fixed window reduces to short_time_dct") {
  const double fs = 44100.0;
  const std::size_t n = 32;
  AdctConfig cfg;
  cfg.grid.f0 = fs / (2.0 * (double)n);
  cfg.grid.bins_per_octave = 1;
  cfg.grid.freqs.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    cfg.grid.freqs[k - 1] = (double)k * fs / (2.0 * (double)n);
  cfg.sample_rate = fs;
  cfg.window = WindowKind::kHamming;
  cfg.hop = 16;
  cfg.min_len = n;
  cfg.max_len = n;  // pinned length: every channel uses the same window

  const auto x = random_signal(400, 31);
  const FeatureMatrix adaptive = adaptive_stdct(x, cfg);
  const FeatureMatrix linear = short_time_dct(
      x, StdctConfig{n, 16, WindowKind::kHamming, n, ConvMode::kValid, false});
  REQUIRE(adaptive.rows() == linear.rows());
  REQUIRE(adaptive.cols() == n - 1);
  double scale = std::max(1.0, max_abs(linear.data()));
  for (std::size_t m = 0; m < adaptive.rows(); ++m)
    for (std::size_t k = 1; k < n; ++k)
      CHECK(std::abs(adaptive.at(m, k - 1) - linear.at(m, k)) <=
            1e-12 * scale);
}

TEST_CASE("input shorter than the longest filter names the minimum") {
  AdctConfig cfg;
  cfg.grid = cq_frequency_grid(100.0, 800.0, 2, 8000.0);
  cfg.sample_rate = 8000.0;
  cfg.max_len = 4096;
  std::vector<double> x(50, 1.0);
  CHECK_THROWS_WITH_AS(adaptive_stdct(x, cfg), doctest::Contains("minimum"),
                       DataError);
}

TEST_CASE("two-layer output is pooled, non-negative, and composable") {
  const double fs = 8000.0;
  AdctConfig layer1;
  layer1.grid = cq_frequency_grid(200.0, 1600.0, 4, fs);
  layer1.sample_rate = fs;
  layer1.hop = 16;
  layer1.max_len = 256;

  const double row_rate = fs / 16.0;  // 500 Hz
  AdctConfig layer2;
  layer2.grid = cq_frequency_grid(20.0, 200.0, 2, row_rate);
  layer2.sample_rate = row_rate;
  layer2.hop = 8;
  layer2.max_len = 64;

  std::vector<double> zeros(4000, 0.0);
  const FeatureMatrix zf = adctnet_two_layer(zeros, layer1, layer2);
  CHECK(max_abs(zf.data()) == 0.0);
  CHECK(zf.center_freqs == layer2.grid.freqs);
  CHECK(zf.frame_hop == 16 * 8);

  const auto x = random_signal(4000, 12);
  const FeatureMatrix pooled = adctnet_two_layer(x, layer1, layer2);
  for (double v : pooled.data()) CHECK(v >= 0.0);

  // Composing the public single-layer op row by row gives the same result.
  const FeatureMatrix first = adaptive_stdct(x, layer1);
  FeatureMatrix manual;
  std::vector<double> series(first.rows());
  for (std::size_t k1 = 0; k1 < first.cols(); ++k1) {
    for (std::size_t m = 0; m < first.rows(); ++m) series[m] = first.at(m, k1);
    const FeatureMatrix f2 = adaptive_stdct(series, layer2);
    if (k1 == 0) manual = FeatureMatrix(f2.rows(), f2.cols());
    for (std::size_t m = 0; m < f2.rows(); ++m)
      for (std::size_t k2 = 0; k2 < f2.cols(); ++k2)
        manual.at(m, k2) += f2.at(m, k2) * f2.at(m, k2);
  }
  REQUIRE(manual.rows() == pooled.rows());
  REQUIRE(manual.cols() == pooled.cols());
  const double scale = std::max(1.0, max_abs(pooled.data()));
  for (std::size_t i = 0; i < pooled.data().size(); ++i)
    CHECK(std::abs(pooled.data()[i] - manual.data()[i]) <= 1e-12 * scale);
}

TEST_CASE("layer-2 grid above the row Nyquist is rejected with advice") {
  AdctConfig layer1;
  layer1.grid = cq_frequency_grid(200.0, 1600.0, 4, 8000.0);
  layer1.sample_rate = 8000.0;
  layer1.hop = 64;  // row rate 125 Hz
  layer1.max_len = 256;

  AdctConfig layer2;
  layer2.grid = cq_frequency_grid(20.0, 200.0, 2, 8000.0);  // up to 160 Hz
  layer2.sample_rate = 125.0;
  layer2.hop = 4;

  std::vector<double> x(4000, 0.1);
  CHECK_THROWS_WITH_AS(adctnet_two_layer(x, layer1, layer2),
                       doctest::Contains("lower layer-2 f_max"),
                       ArgumentError);
}

TEST_CASE("harmonic excerpt keeps more mass in low channels than log-MFSC") {
  // A short run of low harmonic notes, the kind of content the adaptive
  // cascade is built to resolve.
  const double fs = 22050.0;
  const double dur = 1.6;
  const auto n = static_cast<std::size_t>(dur * fs);
  std::vector<double> x(n, 0.0);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double notes[4] = {110.0, 146.83, 164.81, 196.0};
  for (int note = 0; note < 4; ++note) {
    const std::size_t s0 = static_cast<std::size_t>(note * 0.4 * fs);
    const std::size_t s1 =
        std::min(n, static_cast<std::size_t>((note + 1) * 0.4 * fs));
    for (std::size_t i = s0; i < s1; ++i) {
      const double t = static_cast<double>(i) / fs;
      for (int harmonic = 1; harmonic <= 8; ++harmonic)
        x[i] += (0.4 / harmonic) *
                std::sin(2.0 * kPi * notes[note] * harmonic * t);
      // Broadband attack transient at the note onset.
      const double since = static_cast<double>(i - s0) / fs;
      if (since < 0.03) x[i] += 0.5 * std::exp(-since / 0.01) * gauss(rng);
    }
  }

  // A dense first layer keeps the second layer's band wide (row Nyquist
  // far above the excerpt's content).
  AdctConfig layer1;
  layer1.grid = cq_frequency_grid(40.0, 5500.0, 12, fs);
  layer1.sample_rate = fs;
  layer1.hop = 2;
  layer1.max_len = 2048;
  const double row_rate = fs / 2.0;
  AdctConfig layer2;
  layer2.grid = cq_frequency_grid(40.0, 0.45 * row_rate, 6, row_rate);
  layer2.sample_rate = row_rate;
  layer2.hop = 64;
  const FeatureMatrix adct_img =
      log_compress(adctnet_two_layer(x, layer1, layer2), 1e-10);

  const FeatureMatrix spec = power_spectrogram(x, 256, 128);
  const TriFilterBank fb =
      make_tri_filterbank(FreqScale::kMel, 40, 0.0, fs / 2.0, fs, 129);
  const FeatureMatrix mfsc = apply_filterbank(spec, fb);

  auto low_mass = [](const FeatureMatrix &fm) {
    double lo = fm.data()[0], hi = fm.data()[0];
    for (double v : fm.data()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    double below = 0.0, total = 0.0;
    for (std::size_t m = 0; m < fm.rows(); ++m)
      for (std::size_t k = 0; k < fm.cols(); ++k) {
        const double v = (fm.at(m, k) - lo) / (hi - lo);
        total += v;
        if (k < fm.cols() / 2) below += v;
      }
    return below / total;
  };
  CHECK(low_mass(adct_img) > low_mass(mfsc));
}
