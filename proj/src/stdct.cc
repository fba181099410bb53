// src/stdct.cc

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

#include "adctnet/stdct.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace adct {

namespace {

void validate(const StdctConfig &cfg) {
  if (cfg.window_len == 0)
    throw ArgumentError("stdct: window length must be >= 1");
  if (cfg.hop == 0 || cfg.hop > cfg.window_len)
    throw ArgumentError("stdct: need 1 <= hop <= window length");
  if (cfg.channels == 0 || cfg.channels > cfg.window_len)
    throw ArgumentError("stdct: need 1 <= channels <= window length");
}

// Windowed-cosine filters for channels 0..channels-1, with optional
// orthonormal DCT scaling.
std::vector<std::vector<double>> build_filters(const StdctConfig &cfg) {
  std::vector<std::size_t> channels(cfg.channels);
  for (std::size_t k = 0; k < cfg.channels; ++k) channels[k] = k;
  FilterBank bank = linear_dct_filterbank(make_window(cfg.window, cfg.window_len),
                                          cfg.window_len, channels);
  if (cfg.orthonormal) {
    const double n = static_cast<double>(cfg.window_len);
    for (std::size_t k = 0; k < bank.filters.size(); ++k) {
      const double s = (k == 0) ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      for (double &v : bank.filters[k]) v *= s;
    }
  }
  return std::move(bank.filters);
}

std::size_t frame_count(std::size_t len, const StdctConfig &cfg) {
  if (cfg.mode == ConvMode::kValid) {
    if (len < cfg.window_len)
      throw DataError("stdct: input length " + std::to_string(len) +
                      " shorter than window " +
                      std::to_string(cfg.window_len) + " in valid mode");
    return (len - cfg.window_len) / cfg.hop + 1;
  }
  if (len == 0) throw DataError("stdct: empty input");
  return (len + cfg.hop - 1) / cfg.hop;  // ceil(len / hop)
}

}  // namespace

FeatureMatrix short_time_dct(std::span<const double> x,
                             const StdctConfig &cfg) {
  validate(cfg);
  const std::size_t frames = frame_count(x.size(), cfg);
  const auto filters = build_filters(cfg);
  FeatureMatrix out(frames, cfg.channels, static_cast<std::uint32_t>(cfg.hop));

  const std::size_t n = cfg.window_len;
  if (cfg.mode == ConvMode::kValid) {
    for (std::size_t m = 0; m < frames; ++m) {
      const double *frame = x.data() + m * cfg.hop;
      double *row = out.row(m);
      for (std::size_t k = 0; k < cfg.channels; ++k) {
        const double *f = filters[k].data();
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += frame[i] * f[i];
        row[k] = acc;
      }
    }
  } else {
    const std::size_t len = x.size();
    for (std::size_t m = 0; m < frames; ++m) {
      const std::size_t start = (m * cfg.hop) % len;
      double *row = out.row(m);
      for (std::size_t k = 0; k < cfg.channels; ++k) {
        const double *f = filters[k].data();
        double acc = 0.0;
        std::size_t idx = start;
        for (std::size_t i = 0; i < n; ++i) {
          acc += x[idx] * f[i];
          if (++idx == len) idx = 0;
        }
        row[k] = acc;
      }
    }
  }
  return out;
}

LayeredTensor dctnet_forward(std::span<const double> x,
                             const StdctConfig &layer1,
                             const StdctConfig &layer2) {
  validate(layer1);
  validate(layer2);

  FeatureMatrix first;
  try {
    first = short_time_dct(x, layer1);
  } catch (const DataError &e) {
    throw DataError(std::string("layer 1: ") + e.what());
  }

  // Each channel's coefficient sequence is itself a time series; run the
  // second layer over every column of the first layer's output.
  std::vector<double> series(first.rows());
  LayeredTensor tensor;
  for (std::size_t k1 = 0; k1 < first.cols(); ++k1) {
    for (std::size_t m = 0; m < first.rows(); ++m)
      series[m] = first.at(m, k1);
    FeatureMatrix second;
    try {
      second = short_time_dct(series, layer2);
    } catch (const DataError &e) {
      throw DataError(std::string("layer 2: ") + e.what());
    }
    if (k1 == 0) {
      tensor = LayeredTensor(second.rows(), first.cols(), second.cols(),
                             static_cast<std::uint32_t>(layer1.hop * layer2.hop));
    }
    for (std::size_t m = 0; m < second.rows(); ++m)
      for (std::size_t k2 = 0; k2 < second.cols(); ++k2)
        tensor.at(m, k1, k2) = second.at(m, k2);
  }
  return tensor;
}

FeatureMatrix pool_energy(const LayeredTensor &t) {
  FeatureMatrix out(t.frames, t.n_k2, t.hop);
  for (std::size_t m = 0; m < t.frames; ++m) {
    double *row = out.row(m);
    for (std::size_t k1 = 0; k1 < t.n_k1; ++k1) {
      const double *slice = t.data.data() + (m * t.n_k1 + k1) * t.n_k2;
      for (std::size_t k2 = 0; k2 < t.n_k2; ++k2)
        row[k2] += slice[k2] * slice[k2];
    }
  }
  return out;
}

FeatureMatrix log_compress(const FeatureMatrix &fm, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("log_compress: eps must be > 0");
  FeatureMatrix out(fm.rows(), fm.cols(), fm.frame_hop);
  out.center_freqs = fm.center_freqs;
  for (std::size_t i = 0; i < fm.data().size(); ++i) {
    const double v = fm.data()[i];
    if (v < 0.0)
      throw ArgumentError("log_compress: negative entry " +
                          std::to_string(v));
    out.data()[i] = std::log(v + eps);
  }
  return out;
}

double gram_oracle_deviation(std::size_t len, const StdctConfig &layer1,
                             const StdctConfig &layer2, int trials,
                             std::uint64_t seed) {
  if (len == 0 || len > 512)
    throw ArgumentError("gram_oracle_deviation: need 1 <= len <= 512");
  if (trials < 1)
    throw ArgumentError("gram_oracle_deviation: trials must be >= 1");

  // Push each basis vector through the cascade to recover the linear
  // functionals a_{m,k1,k2}; column i of the map is the tensor of e_i.
  std::vector<double> basis_signal(len, 0.0);
  std::vector<LayeredTensor> columns(len);
  for (std::size_t i = 0; i < len; ++i) {
    basis_signal[i] = 1.0;
    columns[i] = dctnet_forward(basis_signal, layer1, layer2);
    basis_signal[i] = 0.0;
  }
  const LayeredTensor &shape = columns[0];
  const std::size_t cells = shape.frames * shape.n_k2;

  // Assemble the Gram matrix G = sum_k1 a a^T for every output cell.
  std::vector<std::vector<double>> grams(cells,
                                         std::vector<double>(len * len, 0.0));
  std::vector<double> a(len);
  for (std::size_t m = 0; m < shape.frames; ++m) {
    for (std::size_t k2 = 0; k2 < shape.n_k2; ++k2) {
      std::vector<double> &g = grams[m * shape.n_k2 + k2];
      for (std::size_t k1 = 0; k1 < shape.n_k1; ++k1) {
        for (std::size_t i = 0; i < len; ++i)
          a[i] = columns[i].at(m, k1, k2);
        for (std::size_t i = 0; i < len; ++i) {
          const double ai = a[i];
          if (ai == 0.0) continue;
          double *g_row = g.data() + i * len;
          for (std::size_t j = 0; j < len; ++j) g_row[j] += ai * a[j];
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(len);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (double &v : x) v = dist(rng);
    const FeatureMatrix f = pool_energy(dctnet_forward(x, layer1, layer2));
    for (std::size_t m = 0; m < shape.frames; ++m) {
      for (std::size_t k2 = 0; k2 < shape.n_k2; ++k2) {
        const std::vector<double> &g = grams[m * shape.n_k2 + k2];
        double quad = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          const double *g_row = g.data() + i * len;
          double inner = 0.0;
          for (std::size_t j = 0; j < len; ++j) inner += g_row[j] * x[j];
          quad += x[i] * inner;
        }
        const double ref = f.at(m, k2);
        const double dev = std::abs(ref - quad) / (std::abs(ref) + 1e-30);
        worst = std::max(worst, dev);
      }
    }
  }
  return worst;
}

double shift_covariance_deviation(std::span<const double> x,
                                  const StdctConfig &layer1,
                                  const StdctConfig &layer2,
                                  std::size_t shift) {
  if (layer1.mode != ConvMode::kCircular ||
      layer2.mode != ConvMode::kCircular)
    throw ArgumentError(
        "shift_covariance_deviation: both layers must be circular");
  const std::size_t composed_hop = layer1.hop * layer2.hop;
  if (shift % composed_hop != 0)
    throw ArgumentError(
        "shift_covariance_deviation: shift must be a multiple of hop1*hop2 (" +
        std::to_string(composed_hop) + ")");

  const FeatureMatrix base = pool_energy(dctnet_forward(x, layer1, layer2));

  // Circular right shift by `shift` samples.
  const std::size_t len = x.size();
  std::vector<double> shifted(len);
  for (std::size_t i = 0; i < len; ++i)
    shifted[(i + shift) % len] = x[i];
  const FeatureMatrix moved =
      pool_energy(dctnet_forward(shifted, layer1, layer2));

  const std::size_t frames = base.rows();
  const std::size_t delta = (shift / composed_hop) % frames;
  double worst = 0.0;
  for (std::size_t m = 0; m < frames; ++m) {
    const std::size_t src = (m + frames - delta) % frames;
    for (std::size_t k2 = 0; k2 < base.cols(); ++k2)
      worst = std::max(worst, std::abs(moved.at(m, k2) - base.at(src, k2)));
  }
  return worst;
}

}  // namespace adct
