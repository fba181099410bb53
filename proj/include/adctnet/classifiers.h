// adctnet/classifiers.h

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

#ifndef ADCTNET_CLASSIFIERS_H_
#define ADCTNET_CLASSIFIERS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adctnet/types.h"

namespace adct {

// ---------------------------------------------------------------------------
// Chunking

// Splits a feature sequence into fixed-length chunks starting at multiples of
// (chunk_len - overlap). A trailing partial chunk is zero-padded to chunk_len
// when at least half of it is real, dropped otherwise. A sequence too short
// to reach the first regular chunk yields a single padded chunk.
std::vector<FeatureMatrix> chunk_sequence(const FeatureMatrix &fm,
                                          std::size_t chunk_len,
                                          std::size_t overlap);

// Chunked dataset: chunks with their parent track and per-track labels.
struct ChunkSet {
  std::vector<FeatureMatrix> chunks;
  std::vector<std::size_t> parent_track;  // per chunk
  std::vector<int> track_labels;          // per track
  std::vector<std::string> class_names;

  std::size_t n_tracks() const { return track_labels.size(); }
};

// ---------------------------------------------------------------------------
// Per-dimension standardization (train-set statistics, stored with models)

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  bool empty() const { return mean.empty(); }
  // (v - mean) / stddev per dimension; dimensions with zero stddev map to 0.
  void apply(std::span<double> v) const;
};

Standardizer fit_standardizer(const FeatureMatrix &x);

// ---------------------------------------------------------------------------
// One-vs-rest linear SVM (stochastic subgradient on the hinge loss with the
// 1/(lambda t) step schedule)

struct SvmConfig {
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 1;
};

struct LinearModel {
  std::size_t dim = 0;
  std::vector<std::string> class_names;
  std::vector<double> weights;  // n_classes x dim row-major
  std::vector<double> bias;     // n_classes
  Standardizer standardizer;

  std::size_t n_classes() const { return bias.size(); }
};

// x: one flattened chunk vector per row; y: class index per row. Features
// are standardized internally with training statistics kept in the model.
LinearModel svm_train(const FeatureMatrix &x, const std::vector<int> &y,
                      const std::vector<std::string> &class_names,
                      const SvmConfig &cfg);

// Returns (argmax label, per-class scores); ties break toward lower index.
std::pair<int, std::vector<double>> svm_predict(const LinearModel &model,
                                                std::span<const double> x);

// Regularized hinge objective averaged over classes; exposed for the
// descent check.
double svm_objective(const LinearModel &model, const FeatureMatrix &x,
                     const std::vector<int> &y, double lambda);

// ---------------------------------------------------------------------------
// Single-hidden-layer tanh RNN with softmax readout

struct RnnModel {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::size_t n_classes = 0;
  std::vector<double> w_in;   // hidden x input
  std::vector<double> w_rec;  // hidden x hidden
  std::vector<double> b_h;    // hidden
  std::vector<double> v;      // n_classes x hidden
  std::vector<double> b_y;    // n_classes
  std::vector<std::string> class_names;
  Standardizer standardizer;  // applied to inputs when non-empty
};

// W_rec is the orthogonal factor of a seeded Gaussian matrix; W_in and V are
// uniform in [-0.01, 0.01]; biases zero. Deterministic given the seed.
RnnModel rnn_init(std::size_t input_dim, std::size_t hidden_dim,
                  std::size_t n_classes, std::uint64_t seed);

// h_0 = 0; h_t = tanh(W_in x_t + W_rec h_{t-1} + b_h);
// returns softmax(V h_T + b_y). The model's standardizer, if fitted, is
// applied to each frame first.
std::vector<double> rnn_forward(const RnnModel &model,
                                const FeatureMatrix &seq);

struct RnnTrainConfig {
  double lr = 0.01;
  int epochs = 100;
  double clip = 5.0;  // global gradient-norm clip
  std::uint64_t seed = 1;
};

struct RnnTrainResult {
  RnnModel model;
  // epoch_loss[0] is the pre-training loss over the set; epoch_loss[e] for
  // e >= 1 is the mean per-chunk loss seen during epoch e.
  std::vector<double> epoch_loss;
};

// Cross-entropy training by full backpropagation through time, one chunk per
// update, seeded shuffling each epoch. Aborts with NumericError naming the
// epoch and chunk if the loss goes non-finite.
RnnTrainResult rnn_train(const RnnModel &model, const ChunkSet &data,
                         const RnnTrainConfig &cfg);

// Compares every analytic parameter gradient against central finite
// differences (step 1e-5); returns the max relative error.
double rnn_gradient_check(const RnnModel &model, const FeatureMatrix &chunk,
                          int label);

// ---------------------------------------------------------------------------
// Track-level evaluation

enum class Aggregation { kChunkVote, kProbMean };

struct EvalResult {
  double track_accuracy = 0.0;
  double chunk_accuracy = 0.0;
  std::vector<std::size_t> confusion;  // n_classes x n_classes, rows = truth
  std::size_t n_classes = 0;
  std::vector<int> track_predictions;  // per track index in the set
};

// Aggregates per-chunk score/probability vectors into track predictions:
// majority vote over chunk argmaxes, or argmax of the mean vector.
EvalResult evaluate_tracks(const std::vector<std::vector<double>> &chunk_scores,
                           const std::vector<std::size_t> &parent_track,
                           const std::vector<int> &track_labels,
                           std::size_t n_classes, Aggregation agg);

EvalResult evaluate(const LinearModel &model, const ChunkSet &data,
                    Aggregation agg);
EvalResult evaluate(const RnnModel &model, const ChunkSet &data,
                    Aggregation agg);

// ---------------------------------------------------------------------------
// Model container, magic "ADM1": kind byte (0 = linear, 1 = rnn), dims as
// little-endian u32, f64 parameter blocks in field order, standardizer
// statistics, then the class-name table. Round-trips bit-exactly.

void save_model(const std::filesystem::path &path, const LinearModel &model);
void save_model(const std::filesystem::path &path, const RnnModel &model);

struct LoadedModel {
  int kind = -1;  // 0 = linear, 1 = rnn
  LinearModel linear;
  RnnModel rnn;
};

LoadedModel load_model(const std::filesystem::path &path);

}  // namespace adct

#endif  // ADCTNET_CLASSIFIERS_H_
