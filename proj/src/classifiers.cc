// src/classifiers.cc

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

// Chunking, standardization, track-level evaluation, and the ADM1 model
// container. The SVM and RNN trainers live in svm.cc / rnn.cc.

#include "adctnet/classifiers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace adct {

std::vector<FeatureMatrix> chunk_sequence(const FeatureMatrix &fm,
                                          std::size_t chunk_len,
                                          std::size_t overlap) {
  if (fm.rows() == 0 || fm.cols() == 0)
    throw DataError("chunk_sequence: empty feature matrix");
  if (chunk_len == 0 || overlap >= chunk_len)
    throw ArgumentError("chunk_sequence: need 0 <= overlap < chunk_len");

  const std::size_t rows = fm.rows();
  const std::size_t step = chunk_len - overlap;
  std::vector<FeatureMatrix> chunks;

  auto emit = [&](std::size_t start) {
    FeatureMatrix chunk(chunk_len, fm.cols(), fm.frame_hop);
    chunk.center_freqs = fm.center_freqs;
    const std::size_t real = std::min(chunk_len, rows - start);
    for (std::size_t m = 0; m < real; ++m)
      std::copy(fm.row(start + m), fm.row(start + m) + fm.cols(),
                chunk.row(m));
    chunks.push_back(std::move(chunk));
  };

  for (std::size_t start = 0; start < rows && rows - start > overlap;
       start += step) {
    const std::size_t real = std::min(chunk_len, rows - start);
    if (real < chunk_len && 2 * real < chunk_len) continue;  // drop the tail
    emit(start);
  }
  // A sequence too short to reach the first regular chunk still yields one
  // (fully padded) chunk.
  if (chunks.empty()) emit(0);
  return chunks;
}

void Standardizer::apply(std::span<double> v) const {
  for (std::size_t d = 0; d < v.size(); ++d) {
    const double s = stddev[d];
    v[d] = (s > 0.0) ? (v[d] - mean[d]) / s : 0.0;
  }
}

Standardizer fit_standardizer(const FeatureMatrix &x) {
  if (x.rows() == 0) throw DataError("fit_standardizer: no rows");
  Standardizer st;
  st.mean.assign(x.cols(), 0.0);
  st.stddev.assign(x.cols(), 0.0);
  for (std::size_t m = 0; m < x.rows(); ++m)
    for (std::size_t d = 0; d < x.cols(); ++d) st.mean[d] += x.at(m, d);
  for (double &v : st.mean) v /= static_cast<double>(x.rows());
  for (std::size_t m = 0; m < x.rows(); ++m)
    for (std::size_t d = 0; d < x.cols(); ++d) {
      const double c = x.at(m, d) - st.mean[d];
      st.stddev[d] += c * c;
    }
  for (double &v : st.stddev)
    v = std::sqrt(v / static_cast<double>(x.rows()));
  return st;
}

EvalResult evaluate_tracks(const std::vector<std::vector<double>> &chunk_scores,
                           const std::vector<std::size_t> &parent_track,
                           const std::vector<int> &track_labels,
                           std::size_t n_classes, Aggregation agg) {
  if (chunk_scores.size() != parent_track.size())
    throw ArgumentError("evaluate_tracks: chunk/track size mismatch");
  const std::size_t n_tracks = track_labels.size();
  std::vector<std::size_t> chunk_count(n_tracks, 0);
  std::vector<std::vector<double>> sums(n_tracks,
                                        std::vector<double>(n_classes, 0.0));
  std::vector<std::vector<std::size_t>> votes(
      n_tracks, std::vector<std::size_t>(n_classes, 0));

  std::size_t chunk_hits = 0;
  for (std::size_t c = 0; c < chunk_scores.size(); ++c) {
    const std::size_t t = parent_track[c];
    if (t >= n_tracks) throw ArgumentError("evaluate_tracks: bad track id");
    const std::vector<double> &scores = chunk_scores[c];
    int best = 0;
    for (std::size_t k = 1; k < n_classes; ++k)
      if (scores[k] > scores[best]) best = static_cast<int>(k);
    votes[t][static_cast<std::size_t>(best)]++;
    for (std::size_t k = 0; k < n_classes; ++k) sums[t][k] += scores[k];
    chunk_count[t]++;
    if (best == track_labels[t]) ++chunk_hits;
  }

  EvalResult result;
  result.n_classes = n_classes;
  result.confusion.assign(n_classes * n_classes, 0);
  result.track_predictions.resize(n_tracks);
  std::size_t track_hits = 0;
  for (std::size_t t = 0; t < n_tracks; ++t) {
    if (chunk_count[t] == 0)
      throw DataError("evaluate_tracks: track " + std::to_string(t) +
                      " has no chunks");
    int pred = 0;
    if (agg == Aggregation::kChunkVote) {
      for (std::size_t k = 1; k < n_classes; ++k)
        if (votes[t][k] > votes[t][static_cast<std::size_t>(pred)])
          pred = static_cast<int>(k);
    } else {
      for (std::size_t k = 1; k < n_classes; ++k)
        if (sums[t][k] > sums[t][static_cast<std::size_t>(pred)])
          pred = static_cast<int>(k);
    }
    result.track_predictions[t] = pred;
    if (pred == track_labels[t]) ++track_hits;
    result.confusion[static_cast<std::size_t>(track_labels[t]) * n_classes +
                     static_cast<std::size_t>(pred)]++;
  }
  result.track_accuracy =
      static_cast<double>(track_hits) / static_cast<double>(n_tracks);
  result.chunk_accuracy = chunk_scores.empty()
                              ? 0.0
                              : static_cast<double>(chunk_hits) /
                                    static_cast<double>(chunk_scores.size());
  return result;
}

EvalResult evaluate(const LinearModel &model, const ChunkSet &data,
                    Aggregation agg) {
  std::vector<std::vector<double>> scores;
  scores.reserve(data.chunks.size());
  std::vector<double> flat;
  for (const FeatureMatrix &chunk : data.chunks) {
    flat = chunk.data();
    auto [label, s] = svm_predict(model, flat);
    (void)label;
    scores.push_back(std::move(s));
  }
  return evaluate_tracks(scores, data.parent_track, data.track_labels,
                         model.n_classes(), agg);
}

EvalResult evaluate(const RnnModel &model, const ChunkSet &data,
                    Aggregation agg) {
  std::vector<std::vector<double>> probs;
  probs.reserve(data.chunks.size());
  for (const FeatureMatrix &chunk : data.chunks)
    probs.push_back(rnn_forward(model, chunk));
  return evaluate_tracks(probs, data.parent_track, data.track_labels,
                         model.n_classes, agg);
}

// ---------------------------------------------------------------------------
// ADM1 container

namespace {

static_assert(std::endian::native == std::endian::little,
              "little-endian host required by the model container");

void put_u32(std::ofstream &out, std::uint32_t v) {
  out.write(reinterpret_cast<const char *>(&v), 4);
}

std::uint32_t get_u32(std::ifstream &in, const char *what) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char *>(&v), 4);
  if (!in) throw FormatError(std::string("model file truncated at ") + what);
  return v;
}

void put_block(std::ofstream &out, const std::vector<double> &v) {
  out.write(reinterpret_cast<const char *>(v.data()),
            static_cast<std::streamsize>(sizeof(double) * v.size()));
}

void get_block(std::ifstream &in, std::vector<double> &v, std::size_t n,
               const char *what) {
  v.resize(n);
  in.read(reinterpret_cast<char *>(v.data()),
          static_cast<std::streamsize>(sizeof(double) * n));
  if (!in) throw FormatError(std::string("model file truncated at ") + what);
}

void put_names(std::ofstream &out, const std::vector<std::string> &names) {
  put_u32(out, static_cast<std::uint32_t>(names.size()));
  for (const std::string &name : names) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
}

std::vector<std::string> get_names(std::ifstream &in) {
  const std::uint32_t count = get_u32(in, "name count");
  std::vector<std::string> names(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = get_u32(in, "name length");
    names[i].resize(len);
    in.read(names[i].data(), len);
    if (!in) throw FormatError("model file truncated at class name");
  }
  return names;
}

void put_standardizer(std::ofstream &out, const Standardizer &st) {
  put_u32(out, static_cast<std::uint32_t>(st.mean.size()));
  put_block(out, st.mean);
  put_block(out, st.stddev);
}

Standardizer get_standardizer(std::ifstream &in) {
  Standardizer st;
  const std::uint32_t dim = get_u32(in, "standardizer dim");
  get_block(in, st.mean, dim, "standardizer mean");
  get_block(in, st.stddev, dim, "standardizer stddev");
  return st;
}

}  // namespace

void save_model(const std::filesystem::path &path, const LinearModel &model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write("ADM1", 4);
  const char kind = 0;
  out.write(&kind, 1);
  put_u32(out, static_cast<std::uint32_t>(model.n_classes()));
  put_u32(out, static_cast<std::uint32_t>(model.dim));
  put_block(out, model.weights);
  put_block(out, model.bias);
  put_standardizer(out, model.standardizer);
  put_names(out, model.class_names);
  if (!out) throw DataError("write failed: " + path.string());
}

void save_model(const std::filesystem::path &path, const RnnModel &model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write("ADM1", 4);
  const char kind = 1;
  out.write(&kind, 1);
  put_u32(out, static_cast<std::uint32_t>(model.input_dim));
  put_u32(out, static_cast<std::uint32_t>(model.hidden_dim));
  put_u32(out, static_cast<std::uint32_t>(model.n_classes));
  put_block(out, model.w_in);
  put_block(out, model.w_rec);
  put_block(out, model.b_h);
  put_block(out, model.v);
  put_block(out, model.b_y);
  put_standardizer(out, model.standardizer);
  put_names(out, model.class_names);
  if (!out) throw DataError("write failed: " + path.string());
}

LoadedModel load_model(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "ADM1", 4) != 0)
    throw FormatError(path.string() + ": bad magic (expected ADM1)");
  char kind = -1;
  in.read(&kind, 1);
  if (!in) throw FormatError(path.string() + ": truncated kind byte");

  LoadedModel loaded;
  loaded.kind = kind;
  if (kind == 0) {
    LinearModel &m = loaded.linear;
    const std::uint32_t n_classes = get_u32(in, "n_classes");
    m.dim = get_u32(in, "dim");
    get_block(in, m.weights, static_cast<std::size_t>(n_classes) * m.dim,
              "weights");
    get_block(in, m.bias, n_classes, "bias");
    m.standardizer = get_standardizer(in);
    m.class_names = get_names(in);
  } else if (kind == 1) {
    RnnModel &m = loaded.rnn;
    m.input_dim = get_u32(in, "input_dim");
    m.hidden_dim = get_u32(in, "hidden_dim");
    m.n_classes = get_u32(in, "n_classes");
    get_block(in, m.w_in, m.hidden_dim * m.input_dim, "w_in");
    get_block(in, m.w_rec, m.hidden_dim * m.hidden_dim, "w_rec");
    get_block(in, m.b_h, m.hidden_dim, "b_h");
    get_block(in, m.v, m.n_classes * m.hidden_dim, "v");
    get_block(in, m.b_y, m.n_classes, "b_y");
    m.standardizer = get_standardizer(in);
    m.class_names = get_names(in);
  } else {
    throw UnsupportedFormatError(path.string() + ": unknown model kind " +
                                 std::to_string(static_cast<int>(kind)));
  }
  return loaded;
}

}  // namespace adct
