// adctnet/adaptive.h

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

#ifndef ADCTNET_ADAPTIVE_H_
#define ADCTNET_ADAPTIVE_H_

#include <cstddef>
#include <span>

#include "adctnet/filterbanks.h"
#include "adctnet/types.h"

namespace adct {

// Configuration of one adaptive (constant-Q) short-time DCT layer.
struct AdctConfig {
  FrequencyGrid grid;
  WindowKind window = WindowKind::kHamming;
  std::size_t hop = 128;
  std::size_t min_len = 1;
  std::size_t max_len = 4096;
  double sample_rate = 44100.0;
  bool normalize_windows = true;
};

// Adaptive short-time DCT: column k at frame m is
//   sum_{n=0}^{N_k-1} x(start + n) h_k(n) cos(2 pi f_k (n + 1/2) / fs)
// with per-channel window h_k of length N_k from cq_window_lengths.
// Filters are center-aligned: every channel's span is centered within the
// longest filter's span, whose start is m*hop. Valid mode; the input must
// be at least as long as the longest filter. channel_meta carries f_k.
FeatureMatrix adaptive_stdct(std::span<const double> x, const AdctConfig &cfg);

// Two-layer adaptive cascade with energy pooling over first-layer channels:
// F(m, k2) = sum_k1 X(m, k1, k2)^2. First-layer channel rows are treated as
// series sampled at sample_rate/hop1; layer2's grid must fit below half that
// row rate. Output columns carry the layer-2 center frequencies.
FeatureMatrix adctnet_two_layer(std::span<const double> x,
                                const AdctConfig &layer1,
                                const AdctConfig &layer2);

}  // namespace adct

#endif  // ADCTNET_ADAPTIVE_H_
