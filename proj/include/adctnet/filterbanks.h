// adctnet/filterbanks.h

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

#ifndef ADCTNET_FILTERBANKS_H_
#define ADCTNET_FILTERBANKS_H_

#include <cstddef>
#include <vector>

#include "adctnet/types.h"

namespace adct {

enum class WindowKind { kRectangular, kHamming, kHann };

struct WindowVector {
  std::vector<double> values;
  WindowKind kind = WindowKind::kRectangular;

  std::size_t size() const { return values.size(); }
};

// Symmetric window of the given length. Length-1 windows are [1.0].
// hamming(n) = 0.54 - 0.46 cos(2 pi n / (L-1)), hann analogously with 0.5.
WindowVector make_window(WindowKind kind, std::size_t length);

// N x N DCT-II basis, entry (k, n) = s_k cos(pi (n + 1/2) k / N), row-major.
// Plain cosines when orthonormal is false; s_0 = sqrt(1/N), s_k = sqrt(2/N)
// otherwise, making the matrix orthogonal.
std::vector<double> dct2_basis(std::size_t n, bool orthonormal);

// Geometrically spaced center frequencies f_k = f0 * 2^(k/b), k = 1..K.
struct FrequencyGrid {
  double f0 = 0.0;            // reference frequency; NOT itself a bin
  int bins_per_octave = 0;    // b
  std::vector<double> freqs;  // freqs[k-1] = f0 * 2^(k/b)

  std::size_t bins() const { return freqs.size(); }
};

// K = floor(b log2(f_max / f0)) bins. Requires 0 < f0 < f_max <= 0.45 fs
// and at least one representable bin.
FrequencyGrid cq_frequency_grid(double f0, double f_max, int b, double fs);

// Q = 1 / (2^(1/b) - 1): adjacent geometric bands touch.
double cq_q_factor(int b);

// Per-bin window lengths N_k = round(Q fs / f_k) clamped into
// [min_len, max_len]; non-increasing in k.
std::vector<std::size_t> cq_window_lengths(const FrequencyGrid &grid,
                                           double fs, std::size_t min_len,
                                           std::size_t max_len);

// A set of windowed-cosine FIR filters.
struct FilterBank {
  std::vector<std::vector<double>> filters;
  std::vector<double> center_freqs;  // Hz; empty for a plain DCT bank
  std::vector<std::size_t> lengths;
  double q_factor = 0.0;  // 0 = linear (non-constant-Q) bank

  std::size_t size() const { return filters.size(); }
  std::size_t max_length() const;
};

// Filter for DCT channel k: h(n) cos(pi (n + 1/2) k / N), n = 0..N-1.
// The window length must equal n; every channel index must be < n.
FilterBank linear_dct_filterbank(const WindowVector &window, std::size_t n,
                                 const std::vector<std::size_t> &channels);

// Constant-Q bank over the grid: filter k is h_k(n) cos(2 pi f_k (n+1/2)/fs)
// with h_k the window kind evaluated at length N_k from cq_window_lengths.
// With normalize_windows, each h_k is rescaled so that sum_n h_k(n) matches
// the longest filter's window sum, so band gain does not grow with length.
FilterBank cq_filterbank(const FrequencyGrid &grid, WindowKind window,
                         double fs, std::size_t min_len, std::size_t max_len,
                         bool normalize_windows = true);

}  // namespace adct

#endif  // ADCTNET_FILTERBANKS_H_
