// tests/test_stdct.cc

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

#include "adctnet/stdct.h"

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

// Straight-line evaluation of the defining sum, written independently of the
// library's filterbank path (window evaluated inline).
double reference_cell(const std::vector<double> &x, const StdctConfig &cfg,
                      std::size_t m, std::size_t k) {
  double acc = 0.0;
  const std::size_t n = cfg.window_len;
  for (std::size_t i = 0; i < n; ++i) {
    double h = 1.0;
    if (cfg.window == WindowKind::kHamming && n > 1)
      h = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (double)(n - 1));
    if (cfg.window == WindowKind::kHann && n > 1)
      h = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (double)(n - 1));
    const double c = std::cos(kPi * (i + 0.5) * (double)k / (double)n);
    std::size_t idx = m * cfg.hop + i;
    if (cfg.mode == ConvMode::kCircular) idx %= x.size();
    acc += x[idx] * h * c;
  }
  return acc;
}

double max_abs(const std::vector<double> &v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("short_time_dct of silence is zero with the documented shape") {
  std::vector<double> x(512, 0.0);
  StdctConfig cfg{256, 128, WindowKind::kHamming, 256, ConvMode::kValid,
                  false};
  const FeatureMatrix out = short_time_dct(x, cfg);
  CHECK(out.rows() == 3);  // (512 - 256)/128 + 1
  CHECK(out.cols() == 256);
  CHECK(max_abs(out.data()) == 0.0);
}

TEST_CASE("unit impulse picks out the first cosine sample") {
  const std::size_t n = 32;
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  StdctConfig cfg{n, n, WindowKind::kRectangular, n, ConvMode::kValid, false};
  const FeatureMatrix out = short_time_dct(x, cfg);
  REQUIRE(out.rows() == 1);
  for (std::size_t k = 0; k < n; ++k)
    CHECK(out.at(0, k) ==
          doctest::Approx(std::cos(kPi * (double)k / (2.0 * (double)n)))
              .epsilon(1e-14));
}

TEST_CASE("short_time_dct matches the straight-line reference") {
  const auto x = random_signal(300, 11);
  for (ConvMode mode : {ConvMode::kValid, ConvMode::kCircular}) {
    StdctConfig cfg{32, 8, WindowKind::kHamming, 20, mode, false};
    const FeatureMatrix out = short_time_dct(x, cfg);
    const std::size_t want_rows =
        mode == ConvMode::kValid ? (300 - 32) / 8 + 1 : (300 + 7) / 8;
    REQUIRE(out.rows() == want_rows);
    for (std::size_t m = 0; m < out.rows(); m += 7)
      for (std::size_t k = 0; k < out.cols(); ++k)
        CHECK(out.at(m, k) ==
              doctest::Approx(reference_cell(x, cfg, m, k)).epsilon(1e-12));
  }
}

TEST_CASE("pure tone energy peaks at the nearest channel") {
  const double fs = 8000.0;
  const std::size_t n = 64;
  StdctConfig cfg{n, n / 2, WindowKind::kHamming, n, ConvMode::kValid, false};
  for (std::size_t j : {5u, 11u, 20u, 30u}) {
    const double f = (double)j * fs / (2.0 * (double)n);
    std::vector<double> x(1024);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::cos(2.0 * kPi * f * (double)i / fs + 0.7);
    const FeatureMatrix out = short_time_dct(x, cfg);
    std::vector<double> energy(n, 0.0);
    for (std::size_t m = 0; m < out.rows(); ++m)
      for (std::size_t k = 0; k < n; ++k)
        energy[k] += out.at(m, k) * out.at(m, k);
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (energy[k] > energy[best]) best = k;
    CHECK(best == j);
  }
}

TEST_CASE("valid mode rejects inputs shorter than the window") {
  std::vector<double> x(100, 1.0);
  StdctConfig cfg{256, 128, WindowKind::kHamming, 10, ConvMode::kValid, false};
  CHECK_THROWS_AS(short_time_dct(x, cfg), DataError);
  CHECK_THROWS_AS(
      short_time_dct(x, StdctConfig{0, 1, WindowKind::kHamming, 1,
                                    ConvMode::kValid, false}),
      ArgumentError);
  CHECK_THROWS_AS(
      short_time_dct(x, StdctConfig{16, 32, WindowKind::kHamming, 8,
                                    ConvMode::kValid, false}),
      ArgumentError);
}

TEST_CASE("dctnet_forward shapes, identity layer, and error naming") {
  // Zero in, zero out.
  std::vector<double> zeros(400, 0.0);
  StdctConfig l1{64, 32, WindowKind::kHamming, 16, ConvMode::kValid, false};
  StdctConfig l2{8, 4, WindowKind::kHamming, 8, ConvMode::kValid, false};
  const LayeredTensor zt = dctnet_forward(zeros, l1, l2);
  CHECK(max_abs(zt.data) == 0.0);
  CHECK(zt.hop == 32 * 4);

  // A length-1 rectangular second layer with channel 0 only is the identity.
  const auto x = random_signal(400, 3);
  StdctConfig ident{1, 1, WindowKind::kRectangular, 1, ConvMode::kValid,
                    false};
  const FeatureMatrix first = short_time_dct(x, l1);
  const LayeredTensor t = dctnet_forward(x, l1, ident);
  REQUIRE(t.frames == first.rows());
  REQUIRE(t.n_k1 == first.cols());
  REQUIRE(t.n_k2 == 1);
  for (std::size_t m = 0; m < t.frames; ++m)
    for (std::size_t k1 = 0; k1 < t.n_k1; ++k1)
      CHECK(t.at(m, k1, 0) == first.at(m, k1));

  // Shape arithmetic for a two-layer run that fits.
  const auto y = random_signal(2048, 5);
  StdctConfig a{64, 32, WindowKind::kHamming, 64, ConvMode::kValid, false};
  StdctConfig b{32, 16, WindowKind::kHamming, 32, ConvMode::kValid, false};
  const LayeredTensor ty = dctnet_forward(y, a, b);
  const std::size_t m1 = (2048 - 64) / 32 + 1;  // 63
  CHECK(ty.n_k1 == 64);
  CHECK(ty.n_k2 == 32);
  CHECK(ty.frames == (m1 - 32) / 16 + 1);

  // A second layer longer than the first layer's frame count names itself.
  StdctConfig too_long{64, 32, WindowKind::kHamming, 64, ConvMode::kValid,
                       false};
  CHECK_THROWS_WITH_AS(dctnet_forward(y, a, too_long),
                       doctest::Contains("layer 2"), DataError);
  CHECK_THROWS_WITH_AS(dctnet_forward(std::vector<double>(10, 1.0), a, b),
                       doctest::Contains("layer 1"), DataError);
}

TEST_CASE("pre-pooling cascade is linear") {
  const auto x = random_signal(256, 21);
  const auto y = random_signal(256, 22);
  StdctConfig l1{16, 8, WindowKind::kHamming, 16, ConvMode::kValid, false};
  StdctConfig l2{8, 4, WindowKind::kHann, 8, ConvMode::kValid, false};
  const double alpha = 1.7, beta = -0.6;
  std::vector<double> mix(256);
  for (std::size_t i = 0; i < 256; ++i) mix[i] = alpha * x[i] + beta * y[i];
  const LayeredTensor tx = dctnet_forward(x, l1, l2);
  const LayeredTensor ty = dctnet_forward(y, l1, l2);
  const LayeredTensor tm = dctnet_forward(mix, l1, l2);
  const double scale = std::max(1.0, max_abs(tm.data));
  for (std::size_t i = 0; i < tm.data.size(); ++i)
    CHECK(std::abs(tm.data[i] - (alpha * tx.data[i] + beta * ty.data[i])) <=
          1e-10 * scale);
}

TEST_CASE("pool_energy matches the naive triple loop and is non-negative") {
  LayeredTensor t(3, 4, 5, 2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double &v : t.data) v = dist(rng);

  const FeatureMatrix pooled = pool_energy(t);
  CHECK(pooled.frame_hop == 2);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t k2 = 0; k2 < 5; ++k2) {
      double want = 0.0;
      for (std::size_t k1 = 0; k1 < 4; ++k1)
        want += t.at(m, k1, k2) * t.at(m, k1, k2);
      CHECK(pooled.at(m, k2) ==
            doctest::Approx(want).epsilon(1e-12));
      CHECK(pooled.at(m, k2) >= 0.0);
    }

  LayeredTensor zero(2, 2, 2, 1);
  CHECK(max_abs(pool_energy(zero).data()) == 0.0);

  LayeredTensor single(1, 3, 1, 1);
  single.at(0, 1, 0) = -2.5;
  CHECK(pool_energy(single).at(0, 0) == 6.25);
}

TEST_CASE("log_compress values, monotonicity, and errors") {
  FeatureMatrix zeros(2, 2);
  const FeatureMatrix z = log_compress(zeros, 1.0);
  CHECK(max_abs(z.data()) == 0.0);  // log 1 = 0

  FeatureMatrix e(1, 1);
  e.at(0, 0) = std::exp(1.0) - 0.5;
  CHECK(log_compress(e, 0.5).at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

  FeatureMatrix random(4, 4);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (double &v : random.data()) v = dist(rng);
  const FeatureMatrix compressed = log_compress(random, 1e-10);
  for (std::size_t i = 0; i < random.data().size(); ++i)
    for (std::size_t j = 0; j < random.data().size(); ++j)
      if (random.data()[i] < random.data()[j])
        CHECK(compressed.data()[i] < compressed.data()[j]);

  FeatureMatrix negative(1, 1);
  negative.at(0, 0) = -1.0;
  CHECK_THROWS_AS(log_compress(negative, 1e-10), ArgumentError);
  CHECK_THROWS_AS(log_compress(zeros, 0.0), ArgumentError);
}

TEST_CASE("quadratic form oracle stays below 1e-9") {
  StdctConfig l1{16, 8, WindowKind::kHamming, 12, ConvMode::kValid, false};
  StdctConfig l2{4, 2, WindowKind::kRectangular, 4, ConvMode::kValid, false};
  CHECK(gram_oracle_deviation(96, l1, l2, 5) < 1e-9);

  StdctConfig c1{16, 4, WindowKind::kHann, 16, ConvMode::kCircular, false};
  StdctConfig c2{8, 2, WindowKind::kHamming, 8, ConvMode::kCircular, false};
  CHECK(gram_oracle_deviation(64, c1, c2, 5) < 1e-9);

  CHECK_THROWS_AS(gram_oracle_deviation(1000, l1, l2, 1), ArgumentError);
  CHECK_THROWS_AS(gram_oracle_deviation(64, l1, l2, 0), ArgumentError);
}

TEST_CASE("pooled features scale quadratically") {
  const auto x = random_signal(128, 31);
  StdctConfig l1{16, 8, WindowKind::kHamming, 16, ConvMode::kValid, false};
  StdctConfig l2{4, 2, WindowKind::kHamming, 4, ConvMode::kValid, false};
  const FeatureMatrix base = pool_energy(dctnet_forward(x, l1, l2));
  for (double alpha : {-2.0, 0.5, 3.0}) {
    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = alpha * x[i];
    const FeatureMatrix out = pool_energy(dctnet_forward(scaled, l1, l2));
    for (std::size_t i = 0; i < out.data().size(); ++i) {
      const double want = alpha * alpha * base.data()[i];
      CHECK(std::abs(out.data()[i] - want) <=
            1e-12 * std::max(1e-30, std::abs(want)));
    }
  }
}

TEST_CASE("circular shift covariance") {
  const auto x = random_signal(256, 41);
  StdctConfig l1{16, 1, WindowKind::kHamming, 8, ConvMode::kCircular, false};
  StdctConfig l2{8, 1, WindowKind::kHamming, 8, ConvMode::kCircular, false};

  CHECK(shift_covariance_deviation(x, l1, l2, 0) == 0.0);
  CHECK(shift_covariance_deviation(x, l1, l2, 17) < 1e-9);

  // Hop-divisible grids stay covariant with coarser hops too.
  StdctConfig h1{16, 2, WindowKind::kHamming, 8, ConvMode::kCircular, false};
  StdctConfig h2{8, 2, WindowKind::kHamming, 8, ConvMode::kCircular, false};
  CHECK(shift_covariance_deviation(x, h1, h2, 4 * 9) < 1e-9);

  // Constant signals are shift-invariant outright.
  std::vector<double> flat(128, 0.35);
  CHECK(shift_covariance_deviation(flat, l1, l2, 13) < 1e-12);

  CHECK_THROWS_AS(shift_covariance_deviation(x, h1, h2, 3), ArgumentError);
  StdctConfig valid{16, 1, WindowKind::kHamming, 8, ConvMode::kValid, false};
  CHECK_THROWS_AS(shift_covariance_deviation(x, valid, l2, 4), ArgumentError);
}

TEST_CASE("orthonormal frames preserve energy (Parseval)") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
    std::vector<double> x(3 * n);
    for (double &v : x) v = dist(rng);
    StdctConfig cfg{n, n, WindowKind::kRectangular, n, ConvMode::kValid, true};
    const FeatureMatrix out = short_time_dct(x, cfg);
    REQUIRE(out.rows() == 3);
    for (std::size_t m = 0; m < out.rows(); ++m) {
      double coeff = 0.0, sig = 0.0;
      for (std::size_t k = 0; k < n; ++k) coeff += out.at(m, k) * out.at(m, k);
      for (std::size_t i = 0; i < n; ++i)
        sig += x[m * n + i] * x[m * n + i];
      CHECK(std::abs(coeff - sig) <= 1e-10 * std::max(1.0, sig));
    }
  }
}
