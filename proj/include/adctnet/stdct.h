// adctnet/stdct.h

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

#ifndef ADCTNET_STDCT_H_
#define ADCTNET_STDCT_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "adctnet/filterbanks.h"
#include "adctnet/types.h"

namespace adct {

enum class ConvMode { kValid, kCircular };

struct StdctConfig {
  std::size_t window_len = 256;  // N
  std::size_t hop = 128;
  WindowKind window = WindowKind::kHamming;
  std::size_t channels = 256;  // DCT channels retained, k = 0..channels-1
  ConvMode mode = ConvMode::kValid;
  bool orthonormal = false;  // orthonormal DCT scaling; for basis tests only
};

// Short-time DCT: row m, column k = sum_n x(n + m hop) h(n) cos(pi (n+1/2) k / N).
// Valid mode yields floor((len - N)/hop) + 1 frames and requires len >= N;
// circular mode wraps indices modulo len and yields ceil(len/hop) frames.
FeatureMatrix short_time_dct(std::span<const double> x, const StdctConfig &cfg);

// Two-layer cascade: short-time DCT of the signal, then a short-time DCT of
// each channel's coefficient time series, stacked into (m, k1, k2).
LayeredTensor dctnet_forward(std::span<const double> x,
                             const StdctConfig &layer1,
                             const StdctConfig &layer2);

// F(m, k2) = sum_k1 X(m, k1, k2)^2.
FeatureMatrix pool_energy(const LayeredTensor &t);

// Entrywise log(entry + eps). Entries must be non-negative, eps > 0.
FeatureMatrix log_compress(const FeatureMatrix &fm, double eps);

// Verifies that the pooled two-layer feature is the quadratic form
// x^T G x with G assembled from basis-vector pushes of dctnet_forward.
// Returns the max relative deviation over `trials` random signals and all
// output cells. len must be <= 512 to keep the Gram assembly tractable.
double gram_oracle_deviation(std::size_t len, const StdctConfig &layer1,
                             const StdctConfig &layer2, int trials,
                             std::uint64_t seed = 0x5eed);

// Circular-mode covariance: pooled features of x shifted by `shift` samples
// must equal the unshifted features rotated by shift/(hop1*hop2) frames.
// Returns the max absolute difference. shift must be a multiple of the
// composed hop and both layers must use circular mode.
double shift_covariance_deviation(std::span<const double> x,
                                  const StdctConfig &layer1,
                                  const StdctConfig &layer2,
                                  std::size_t shift);

}  // namespace adct

#endif  // ADCTNET_STDCT_H_
