// src/adaptive.cc

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

#include "adctnet/adaptive.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace adct {

namespace {

void validate(const AdctConfig &cfg) {
  if (cfg.grid.bins() == 0)
    throw ArgumentError("adaptive_stdct: empty frequency grid");
  if (cfg.hop == 0) throw ArgumentError("adaptive_stdct: hop must be >= 1");
  if (!(cfg.sample_rate > 0.0))
    throw ArgumentError("adaptive_stdct: sample rate must be positive");
  for (double f : cfg.grid.freqs)
    if (!(f < 0.5 * cfg.sample_rate))
      throw ArgumentError("adaptive_stdct: grid frequency " +
                          std::to_string(f) + " Hz >= fs/2");
}

}  // namespace

FeatureMatrix adaptive_stdct(std::span<const double> x,
                             const AdctConfig &cfg) {
  validate(cfg);
  const FilterBank bank =
      cq_filterbank(cfg.grid, cfg.window, cfg.sample_rate, cfg.min_len,
                    cfg.max_len, cfg.normalize_windows);
  const std::size_t longest = bank.max_length();
  if (x.size() < longest)
    throw DataError("adaptive_stdct: input length " +
                    std::to_string(x.size()) + " below required minimum " +
                    std::to_string(longest));

  const std::size_t frames = (x.size() - longest) / cfg.hop + 1;
  const std::size_t n_channels = bank.size();
  FeatureMatrix out(frames, n_channels, static_cast<std::uint32_t>(cfg.hop));
  out.center_freqs = bank.center_freqs;

  // Shorter filters are centered within the longest filter's span, so all
  // channels describe the same instant.
  std::vector<std::size_t> offsets(n_channels);
  for (std::size_t k = 0; k < n_channels; ++k)
    offsets[k] = (longest - bank.lengths[k]) / 2;

  for (std::size_t m = 0; m < frames; ++m) {
    const std::size_t base = m * cfg.hop;
    double *row = out.row(m);
    for (std::size_t k = 0; k < n_channels; ++k) {
      const std::vector<double> &filter = bank.filters[k];
      const double *seg = x.data() + base + offsets[k];
      double acc = 0.0;
      for (std::size_t i = 0; i < filter.size(); ++i) acc += seg[i] * filter[i];
      row[k] = acc;
    }
  }
  return out;
}

FeatureMatrix adctnet_two_layer(std::span<const double> x,
                                const AdctConfig &layer1,
                                const AdctConfig &layer2) {
  validate(layer1);
  const double row_rate = layer1.sample_rate / static_cast<double>(layer1.hop);
  for (double f : layer2.grid.freqs) {
    if (!(f < 0.5 * row_rate))
      throw ArgumentError(
          "adctnet_two_layer: layer-2 frequency " + std::to_string(f) +
          " Hz >= half the row rate " + std::to_string(row_rate) +
          " Hz; lower layer-2 f_max or layer-1 hop");
  }

  FeatureMatrix first;
  try {
    first = adaptive_stdct(x, layer1);
  } catch (const DataError &e) {
    throw DataError(std::string("layer 1: ") + e.what());
  }

  // First-layer channel rows are series sampled at fs / hop1.
  AdctConfig second = layer2;
  second.sample_rate = row_rate;

  std::vector<double> series(first.rows());
  FeatureMatrix pooled;
  for (std::size_t k1 = 0; k1 < first.cols(); ++k1) {
    for (std::size_t m = 0; m < first.rows(); ++m)
      series[m] = first.at(m, k1);
    FeatureMatrix f2;
    try {
      f2 = adaptive_stdct(series, second);
    } catch (const DataError &e) {
      throw DataError(std::string("layer 2: ") + e.what());
    }
    if (k1 == 0) {
      pooled = FeatureMatrix(
          f2.rows(), f2.cols(),
          static_cast<std::uint32_t>(layer1.hop * layer2.hop));
      pooled.center_freqs = f2.center_freqs;
    }
    for (std::size_t m = 0; m < f2.rows(); ++m) {
      double *row = pooled.row(m);
      const double *src = f2.row(m);
      for (std::size_t k2 = 0; k2 < f2.cols(); ++k2)
        row[k2] += src[k2] * src[k2];
    }
  }
  return pooled;
}

}  // namespace adct
