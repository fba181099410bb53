// src/baselines.cc

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

#include "adctnet/baselines.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace adct {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogEps = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT, in place.
void fft_radix2(std::vector<std::complex<double>> &a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// One-sided power of the DFT of `frame`, written into `power`
// (win_len/2 + 1 bins).
void frame_power(const std::vector<double> &frame, std::vector<double> &power,
                 std::vector<std::complex<double>> &scratch) {
  const std::size_t n = frame.size();
  const std::size_t bins = n / 2 + 1;
  if (is_power_of_two(n)) {
    scratch.assign(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) scratch[i] = {frame[i], 0.0};
    fft_radix2(scratch);
    for (std::size_t j = 0; j < bins; ++j) power[j] = std::norm(scratch[j]);
    return;
  }
  for (std::size_t j = 0; j < bins; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg =
          -2.0 * kPi * static_cast<double>(j) * static_cast<double>(i) /
          static_cast<double>(n);
      re += frame[i] * std::cos(arg);
      im += frame[i] * std::sin(arg);
    }
    power[j] = re * re + im * im;
  }
}

}  // namespace

FeatureMatrix power_spectrogram(std::span<const double> x, std::size_t win_len,
                                std::size_t hop, WindowKind window) {
  if (win_len == 0 || hop == 0 || hop > win_len)
    throw ArgumentError("power_spectrogram: need 1 <= hop <= win_len");
  if (x.size() < win_len)
    throw DataError("power_spectrogram: input shorter than window");

  const WindowVector h = make_window(window, win_len);
  const std::size_t frames = (x.size() - win_len) / hop + 1;
  const std::size_t bins = win_len / 2 + 1;
  FeatureMatrix out(frames, bins, static_cast<std::uint32_t>(hop));

  std::vector<double> frame(win_len);
  std::vector<double> power(bins);
  std::vector<std::complex<double>> scratch;
  for (std::size_t m = 0; m < frames; ++m) {
    const double *seg = x.data() + m * hop;
    for (std::size_t i = 0; i < win_len; ++i) frame[i] = seg[i] * h.values[i];
    frame_power(frame, power, scratch);
    std::copy(power.begin(), power.end(), out.row(m));
  }
  return out;
}

double warp_frequency(FreqScale scale, double hz) {
  switch (scale) {
    case FreqScale::kMel:
      return 2595.0 * std::log10(1.0 + hz / 700.0);
    case FreqScale::kErb:
      return 21.4 * std::log10(1.0 + 0.00437 * hz);
    case FreqScale::kLinear:
      return hz;
  }
  return hz;
}

double unwarp_frequency(FreqScale scale, double warped) {
  switch (scale) {
    case FreqScale::kMel:
      return 700.0 * (std::pow(10.0, warped / 2595.0) - 1.0);
    case FreqScale::kErb:
      return (std::pow(10.0, warped / 21.4) - 1.0) / 0.00437;
    case FreqScale::kLinear:
      return warped;
  }
  return warped;
}

TriFilterBank make_tri_filterbank(FreqScale scale, std::size_t n_filters,
                                  double f_min, double f_max, double fs,
                                  std::size_t n_bins) {
  if (n_filters == 0) throw ArgumentError("make_tri_filterbank: n_filters 0");
  if (!(f_min >= 0.0) || !(f_min < f_max) || !(f_max <= fs / 2.0))
    throw ArgumentError(
        "make_tri_filterbank: need 0 <= f_min < f_max <= fs/2");
  if (n_bins < 2) throw ArgumentError("make_tri_filterbank: n_bins < 2");

  TriFilterBank fb;
  fb.scale = scale;
  fb.n_filters = n_filters;
  fb.n_bins = n_bins;
  fb.f_min = f_min;
  fb.f_max = f_max;
  fb.weights.assign(n_filters * n_bins, 0.0);
  fb.centers.resize(n_filters);

  // n_filters + 2 grid points equally spaced on the warped axis.
  const double w_lo = warp_frequency(scale, f_min);
  const double w_hi = warp_frequency(scale, f_max);
  std::vector<double> edges(n_filters + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double w = w_lo + (w_hi - w_lo) * static_cast<double>(i) /
                              static_cast<double>(n_filters + 1);
    edges[i] = unwarp_frequency(scale, w);
  }
  for (std::size_t i = 0; i < n_filters; ++i) fb.centers[i] = edges[i + 1];

  // Bin j sits at j * fs / win_len with win_len = 2 (n_bins - 1).
  const double bin_hz = fs / (2.0 * static_cast<double>(n_bins - 1));
  for (std::size_t i = 0; i < n_filters; ++i) {
    const double lo = edges[i], mid = edges[i + 1], hi = edges[i + 2];
    bool any = false;
    for (std::size_t j = 0; j < n_bins; ++j) {
      const double f = bin_hz * static_cast<double>(j);
      double v = 0.0;
      if (f > lo && f <= mid)
        v = (f - lo) / (mid - lo);
      else if (f > mid && f < hi)
        v = (hi - f) / (hi - mid);
      if (v > 0.0) any = true;
      fb.w(i, j) = v;
    }
    if (!any)
      throw ArgumentError(
          "make_tri_filterbank: filter " + std::to_string(i) +
          " covers no spectrogram bin; fewer filters or more bins needed");
  }
  return fb;
}

FeatureMatrix apply_filterbank(const FeatureMatrix &spec,
                               const TriFilterBank &fb) {
  if (spec.cols() != fb.n_bins)
    throw ArgumentError("apply_filterbank: spectrogram has " +
                        std::to_string(spec.cols()) + " bins, filterbank " +
                        std::to_string(fb.n_bins));
  FeatureMatrix out(spec.rows(), fb.n_filters, spec.frame_hop);
  out.center_freqs = fb.centers;
  for (std::size_t m = 0; m < spec.rows(); ++m) {
    const double *s = spec.row(m);
    double *o = out.row(m);
    for (std::size_t i = 0; i < fb.n_filters; ++i) {
      const double *w = fb.weights.data() + i * fb.n_bins;
      double acc = 0.0;
      for (std::size_t j = 0; j < fb.n_bins; ++j) acc += w[j] * s[j];
      o[i] = std::log(acc + kLogEps);
    }
  }
  return out;
}

}  // namespace adct
