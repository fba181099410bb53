// adctnet/harness.h

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

#ifndef ADCTNET_HARNESS_H_
#define ADCTNET_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adctnet/classifiers.h"
#include "adctnet/filterbanks.h"
#include "adctnet/signal_io.h"
#include "adctnet/types.h"

namespace adct {

enum class FeatureKind { kAdctnet, kDctnet, kMfsc, kLfsc, kErb };

std::string feature_kind_name(FeatureKind kind);
FeatureKind feature_kind_from_name(const std::string &name);

// Feature-extraction knobs. Negative fmin/fmax mean "pick the default for
// the feature kind" (40 Hz / 5500 Hz for the DCT cascades, 0 / fs/2 for the
// filterbank baselines). fmax2 <= 0 clamps the second-layer band to 0.45x
// the first-layer row rate.
struct FeatureParams {
  double fmin = -1.0;
  double fmax = -1.0;
  double fmin2 = -1.0;
  double fmax2 = -1.0;
  int b1 = 12;
  int b2 = 6;
  std::size_t win = 256;    // layer-1 window (dctnet) / spectrogram window
  std::size_t win2 = 32;    // layer-2 window (dctnet)
  std::size_t hop = 128;    // layer-1 / spectrogram hop
  std::size_t hop2 = 16;    // layer-2 hop
  std::size_t nfilters = 40;
  std::size_t min_len = 1;
  std::size_t max_len = 4096;
  std::size_t chunk_len = 60;
  std::size_t overlap = 30;
  WindowKind window = WindowKind::kHamming;
  bool log_output = true;  // log-compress pooled cascade features
  double log_eps = 1e-10;
};

// Canonical one-line rendering; part of the feature cache key.
std::string feature_params_key(FeatureKind kind, const FeatureParams &p);

FeatureMatrix extract_feature(const Signal &signal, FeatureKind kind,
                              const FeatureParams &p);

enum class ClassifierKind { kSvm, kRnn };

struct ClassifierParams {
  ClassifierKind kind = ClassifierKind::kSvm;
  double lr = 0.01;
  int epochs = 100;
  std::size_t hidden = 64;
  double lambda = 1e-4;
  double clip = 5.0;
  std::uint64_t seed = 1;
  Aggregation agg = Aggregation::kProbMean;
};

struct ExperimentConfig {
  FeatureKind feature = FeatureKind::kAdctnet;
  FeatureParams feature_params;
  ClassifierParams classifier;
  int n_repeats = 10;
  std::uint64_t split_seed = 0;
  double test_fraction = 0.2;
  int jobs = 0;  // 0 = hardware concurrency
};

struct RepeatResult {
  double track_accuracy = 0.0;  // under the configured aggregation
  double chunk_accuracy = 0.0;
  double accuracy_prob_mean = 0.0;
  double accuracy_chunk_vote = 0.0;
  std::vector<std::size_t> confusion;
};

struct ExperimentReport {
  std::vector<RepeatResult> repeats;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample std; 0 when n_repeats == 1
  std::vector<std::size_t> confusion;  // summed over repeats
  std::vector<std::string> class_names;
  std::string config_line;

  // Deterministic function of the report contents.
  std::string to_text() const;
};

// Stratified track split: test gets round(test_fraction * n_c) tracks per
// class (at least 1, at most n_c - 1), seeded shuffle per class.
// Returns per-track flags (true = test). Classes need >= 2 tracks.
std::vector<bool> stratified_split(const std::vector<int> &track_labels,
                                   std::size_t n_classes, double test_fraction,
                                   std::uint64_t seed);

// Full protocol: extract features per track (cached in cache_dir by content
// hash), chunk, then for each repeat r split with seed split_seed + r, train
// and evaluate. Deterministic for fixed config, manifest, and audio bytes.
ExperimentReport run_experiment(const ExperimentConfig &cfg,
                                const DatasetManifest &manifest,
                                const std::filesystem::path &cache_dir);

// Parses the flat key = value TOML subset used by the `experiment` command:
// [experiment], [feature], [classifier] sections.
ExperimentConfig parse_experiment_config(const std::filesystem::path &path);

// Grayscale P5 image: rows = channels (low frequency at the bottom),
// columns = frames, [min, max] mapped linearly to [0, 255]; constant
// matrices map to mid-gray 128.
void emit_plot(const FeatureMatrix &fm, const std::filesystem::path &path);

// SHA-256 (used for feature-cache keys).
std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_hex(const std::string &bytes);

}  // namespace adct

#endif  // ADCTNET_HARNESS_H_
