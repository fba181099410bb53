// src/filterbanks.cc

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

#include "adctnet/filterbanks.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace adct {

namespace {
constexpr double kPi = std::numbers::pi;
}

WindowVector make_window(WindowKind kind, std::size_t length) {
  if (length == 0) throw ArgumentError("make_window: length must be >= 1");
  WindowVector w;
  w.kind = kind;
  w.values.assign(length, 1.0);
  if (length == 1 || kind == WindowKind::kRectangular) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    const double c = std::cos(2.0 * kPi * static_cast<double>(n) / denom);
    switch (kind) {
      case WindowKind::kHamming:
        w.values[n] = 0.54 - 0.46 * c;
        break;
      case WindowKind::kHann:
        w.values[n] = 0.5 - 0.5 * c;
        break;
      case WindowKind::kRectangular:
        break;
    }
  }
  // Enforce exact symmetry; cos() of mirrored arguments can differ by 1 ulp.
  for (std::size_t n = 0; n < length / 2; ++n)
    w.values[length - 1 - n] = w.values[n];
  return w;
}

std::vector<double> dct2_basis(std::size_t n, bool orthonormal) {
  if (n == 0) throw ArgumentError("dct2_basis: N must be >= 1");
  std::vector<double> basis(n * n);
  const double s0 = orthonormal ? std::sqrt(1.0 / static_cast<double>(n)) : 1.0;
  const double sk = orthonormal ? std::sqrt(2.0 / static_cast<double>(n)) : 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = (k == 0) ? s0 : sk;
    for (std::size_t col = 0; col < n; ++col) {
      basis[k * n + col] =
          scale * std::cos(kPi * (static_cast<double>(col) + 0.5) *
                           static_cast<double>(k) / static_cast<double>(n));
    }
  }
  return basis;
}

FrequencyGrid cq_frequency_grid(double f0, double f_max, int b, double fs) {
  if (!(f0 > 0.0) || !(f_max > f0))
    throw ArgumentError("cq_frequency_grid: need 0 < f0 < f_max");
  if (f_max > 0.45 * fs)
    throw ArgumentError("cq_frequency_grid: f_max exceeds 0.45 * fs (" +
                        std::to_string(0.45 * fs) + " Hz)");
  if (b < 1) throw ArgumentError("cq_frequency_grid: b must be >= 1");

  long k_max = static_cast<long>(
      std::floor(static_cast<double>(b) * std::log2(f_max / f0)));
  // Guard the floor against landing one ulp above an exact octave boundary.
  while (k_max > 0 &&
         f0 * std::pow(2.0, static_cast<double>(k_max) / b) >
             f_max * (1.0 + 1e-12)) {
    --k_max;
  }
  if (k_max < 1)
    throw ArgumentError(
        "cq_frequency_grid: no representable bins; widen [f0, f_max]");

  FrequencyGrid grid;
  grid.f0 = f0;
  grid.bins_per_octave = b;
  grid.freqs.resize(static_cast<std::size_t>(k_max));
  for (long k = 1; k <= k_max; ++k) {
    grid.freqs[static_cast<std::size_t>(k - 1)] =
        f0 * std::pow(2.0, static_cast<double>(k) / b);
  }
  return grid;
}

double cq_q_factor(int b) {
  if (b < 1) throw ArgumentError("cq_q_factor: b must be >= 1");
  return 1.0 / (std::pow(2.0, 1.0 / b) - 1.0);
}

std::vector<std::size_t> cq_window_lengths(const FrequencyGrid &grid,
                                           double fs, std::size_t min_len,
                                           std::size_t max_len) {
  if (min_len < 1 || min_len > max_len)
    throw ArgumentError("cq_window_lengths: need 1 <= min_len <= max_len");
  const double q = cq_q_factor(grid.bins_per_octave);
  std::vector<std::size_t> lengths(grid.bins());
  for (std::size_t k = 0; k < grid.bins(); ++k) {
    const double ideal = q * fs / grid.freqs[k];
    auto n = static_cast<long long>(std::llround(ideal));
    n = std::clamp<long long>(n, static_cast<long long>(min_len),
                              static_cast<long long>(max_len));
    lengths[k] = static_cast<std::size_t>(n);
  }
  return lengths;
}

std::size_t FilterBank::max_length() const {
  std::size_t m = 0;
  for (std::size_t len : lengths) m = std::max(m, len);
  return m;
}

FilterBank linear_dct_filterbank(const WindowVector &window, std::size_t n,
                                 const std::vector<std::size_t> &channels) {
  if (window.size() != n)
    throw ArgumentError("linear_dct_filterbank: window length != N");
  FilterBank bank;
  bank.q_factor = 0.0;
  bank.filters.reserve(channels.size());
  bank.lengths.reserve(channels.size());
  for (std::size_t k : channels) {
    if (k >= n)
      throw ArgumentError("linear_dct_filterbank: channel " +
                          std::to_string(k) + " out of range for N = " +
                          std::to_string(n));
    std::vector<double> filter(n);
    for (std::size_t col = 0; col < n; ++col) {
      filter[col] = window.values[col] *
                    std::cos(kPi * (static_cast<double>(col) + 0.5) *
                             static_cast<double>(k) / static_cast<double>(n));
    }
    bank.filters.push_back(std::move(filter));
    bank.lengths.push_back(n);
  }
  return bank;
}

FilterBank cq_filterbank(const FrequencyGrid &grid, WindowKind window,
                         double fs, std::size_t min_len, std::size_t max_len,
                         bool normalize_windows) {
  FilterBank bank;
  bank.q_factor = cq_q_factor(grid.bins_per_octave);
  bank.center_freqs = grid.freqs;
  bank.lengths = cq_window_lengths(grid, fs, min_len, max_len);
  bank.filters.resize(grid.bins());

  // Reference window sum: the longest filter (lowest bin) keeps its natural
  // gain, every other window is rescaled to the same sum.
  double ref_sum = 0.0;
  for (std::size_t k = 0; k < grid.bins(); ++k) {
    const std::size_t len = bank.lengths[k];
    WindowVector h = make_window(window, len);
    const double h_sum =
        std::accumulate(h.values.begin(), h.values.end(), 0.0);
    if (k == 0) ref_sum = h_sum;
    const double scale = normalize_windows ? ref_sum / h_sum : 1.0;
    std::vector<double> filter(len);
    const double f_k = grid.freqs[k];
    for (std::size_t col = 0; col < len; ++col) {
      filter[col] = scale * h.values[col] *
                    std::cos(2.0 * kPi * f_k *
                             (static_cast<double>(col) + 0.5) / fs);
    }
    bank.filters[k] = std::move(filter);
  }
  return bank;
}

}  // namespace adct
