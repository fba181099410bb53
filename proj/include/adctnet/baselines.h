// adctnet/baselines.h

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

#ifndef ADCTNET_BASELINES_H_
#define ADCTNET_BASELINES_H_

#include <cstddef>
#include <span>

#include "adctnet/filterbanks.h"
#include "adctnet/types.h"

namespace adct {

// One-sided power spectrogram: frame m, bin j = |DFT_j(h . frame)|^2 for
// j = 0..win_len/2.
FeatureMatrix power_spectrogram(std::span<const double> x,
                                std::size_t win_len = 256,
                                std::size_t hop = 128,
                                WindowKind window = WindowKind::kHamming);

enum class FreqScale { kMel, kLinear, kErb };

// Frequency warps: mel m(f) = 2595 log10(1 + f/700); erb rate
// 21.4 log10(1 + 0.00437 f); linear is the identity.
double warp_frequency(FreqScale scale, double hz);
double unwarp_frequency(FreqScale scale, double warped);

// Triangular filterbank over spectrogram bins.
struct TriFilterBank {
  std::size_t n_filters = 0;
  std::size_t n_bins = 0;
  std::vector<double> weights;  // n_filters x n_bins row-major
  std::vector<double> centers;  // Hz
  FreqScale scale = FreqScale::kMel;
  double f_min = 0.0, f_max = 0.0;

  double &w(std::size_t i, std::size_t j) { return weights[i * n_bins + j]; }
  double w(std::size_t i, std::size_t j) const {
    return weights[i * n_bins + j];
  }
};

// n_filters peak-1.0 triangles with centers equally spaced on the warped
// axis; each triangle's endpoints sit at the neighboring centers. n_bins is
// the one-sided spectrogram bin count (win_len/2 + 1 for win_len even).
TriFilterBank make_tri_filterbank(FreqScale scale, std::size_t n_filters,
                                  double f_min, double f_max, double fs,
                                  std::size_t n_bins);

// output(m, i) = log(sum_j weights(i, j) spec(m, j) + eps), eps = 1e-10.
FeatureMatrix apply_filterbank(const FeatureMatrix &spec,
                               const TriFilterBank &fb);

}  // namespace adct

#endif  // ADCTNET_BASELINES_H_
