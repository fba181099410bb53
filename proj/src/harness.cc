// src/harness.cc

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

#include "adctnet/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "adctnet/adaptive.h"
#include "adctnet/baselines.h"
#include "adctnet/stdct.h"
#include "parallel.h"

namespace adct {

namespace {

std::string window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::kRectangular:
      return "rectangular";
    case WindowKind::kHamming:
      return "hamming";
    case WindowKind::kHann:
      return "hann";
  }
  return "?";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_acc(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kAdctnet:
      return "adctnet";
    case FeatureKind::kDctnet:
      return "dctnet";
    case FeatureKind::kMfsc:
      return "mfsc";
    case FeatureKind::kLfsc:
      return "lfsc";
    case FeatureKind::kErb:
      return "erb";
  }
  return "?";
}

FeatureKind feature_kind_from_name(const std::string &name) {
  if (name == "adctnet") return FeatureKind::kAdctnet;
  if (name == "dctnet") return FeatureKind::kDctnet;
  if (name == "mfsc") return FeatureKind::kMfsc;
  if (name == "lfsc") return FeatureKind::kLfsc;
  if (name == "erb") return FeatureKind::kErb;
  throw ArgumentError("unknown feature kind: " + name);
}

std::string feature_params_key(FeatureKind kind, const FeatureParams &p) {
  std::ostringstream out;
  out << "feature=" << feature_kind_name(kind) << ";fmin=" << fmt(p.fmin)
      << ";fmax=" << fmt(p.fmax) << ";fmin2=" << fmt(p.fmin2)
      << ";fmax2=" << fmt(p.fmax2) << ";b1=" << p.b1 << ";b2=" << p.b2
      << ";win=" << p.win << ";win2=" << p.win2 << ";hop=" << p.hop
      << ";hop2=" << p.hop2 << ";nfilters=" << p.nfilters
      << ";min_len=" << p.min_len << ";max_len=" << p.max_len
      << ";window=" << window_kind_name(p.window)
      << ";log=" << (p.log_output ? 1 : 0) << ";log_eps=" << fmt(p.log_eps);
  return out.str();
}

FeatureMatrix extract_feature(const Signal &signal, FeatureKind kind,
                              const FeatureParams &p) {
  if (signal.samples.empty()) throw DataError("extract_feature: empty signal");
  if (signal.sample_rate == 0)
    throw DataError("extract_feature: zero sample rate");
  const double fs = static_cast<double>(signal.sample_rate);

  switch (kind) {
    case FeatureKind::kAdctnet: {
      const double fmin = p.fmin < 0.0 ? 40.0 : p.fmin;
      double fmax = p.fmax < 0.0 ? 5500.0 : p.fmax;
      fmax = std::min(fmax, 0.45 * fs);
      AdctConfig layer1;
      layer1.grid = cq_frequency_grid(fmin, fmax, p.b1, fs);
      layer1.window = p.window;
      layer1.hop = p.hop;
      layer1.min_len = p.min_len;
      layer1.max_len = p.max_len;
      layer1.sample_rate = fs;

      const double row_rate = fs / static_cast<double>(p.hop);
      const double fmax2 =
          p.fmax2 <= 0.0 ? 0.45 * row_rate : std::min(p.fmax2, 0.45 * row_rate);
      const double fmin2 = p.fmin2 < 0.0 ? fmin : p.fmin2;
      AdctConfig layer2;
      layer2.grid = cq_frequency_grid(fmin2, fmax2, p.b2, row_rate);
      layer2.window = p.window;
      layer2.hop = p.hop2;
      layer2.min_len = p.min_len;
      layer2.max_len = p.max_len;
      layer2.sample_rate = row_rate;

      FeatureMatrix pooled =
          adctnet_two_layer(signal.samples, layer1, layer2);
      return p.log_output ? log_compress(pooled, p.log_eps) : pooled;
    }
    case FeatureKind::kDctnet: {
      StdctConfig layer1{p.win, p.hop, p.window, p.win, ConvMode::kValid,
                         false};
      StdctConfig layer2{p.win2, p.hop2, p.window, p.win2, ConvMode::kValid,
                         false};
      FeatureMatrix pooled =
          pool_energy(dctnet_forward(signal.samples, layer1, layer2));
      return p.log_output ? log_compress(pooled, p.log_eps) : pooled;
    }
    case FeatureKind::kMfsc:
    case FeatureKind::kLfsc:
    case FeatureKind::kErb: {
      const FreqScale scale = kind == FeatureKind::kMfsc  ? FreqScale::kMel
                              : kind == FeatureKind::kLfsc ? FreqScale::kLinear
                                                           : FreqScale::kErb;
      const double fmin = p.fmin < 0.0 ? 0.0 : p.fmin;
      const double fmax = p.fmax < 0.0 ? fs / 2.0 : std::min(p.fmax, fs / 2.0);
      const FeatureMatrix spec =
          power_spectrogram(signal.samples, p.win, p.hop, p.window);
      const TriFilterBank fb = make_tri_filterbank(
          scale, p.nfilters, fmin, fmax, fs, p.win / 2 + 1);
      return apply_filterbank(spec, fb);
    }
  }
  throw ArgumentError("extract_feature: bad feature kind");
}

std::vector<bool> stratified_split(const std::vector<int> &track_labels,
                                   std::size_t n_classes, double test_fraction,
                                   std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ArgumentError("stratified_split: need 0 < test_fraction < 1");
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t t = 0; t < track_labels.size(); ++t) {
    const int label = track_labels[t];
    if (label < 0 || static_cast<std::size_t>(label) >= n_classes)
      throw ArgumentError("stratified_split: label out of range");
    by_class[static_cast<std::size_t>(label)].push_back(t);
  }

  std::mt19937_64 rng(seed);
  std::vector<bool> is_test(track_labels.size(), false);
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::vector<std::size_t> &members = by_class[c];
    if (members.size() < 2)
      throw DataError("stratified_split: class " + std::to_string(c) +
                      " has fewer than 2 tracks; cannot stratify");
    std::shuffle(members.begin(), members.end(), rng);
    const auto ideal = static_cast<std::size_t>(std::llround(
        test_fraction * static_cast<double>(members.size())));
    const std::size_t n_test =
        std::clamp<std::size_t>(ideal, 1, members.size() - 1);
    for (std::size_t i = 0; i < n_test; ++i) is_test[members[i]] = true;
  }
  return is_test;
}

namespace {

struct TrackData {
  std::vector<FeatureMatrix> chunks;
  int label = 0;
};

// Flattens selected tracks' chunks into one matrix row per chunk.
void flatten_chunks(const std::vector<TrackData> &tracks,
                    const std::vector<std::size_t> &selected,
                    FeatureMatrix *x, std::vector<int> *y) {
  std::size_t n = 0, dim = 0;
  for (std::size_t t : selected) {
    n += tracks[t].chunks.size();
    if (!tracks[t].chunks.empty())
      dim = tracks[t].chunks.front().data().size();
  }
  *x = FeatureMatrix(n, dim);
  y->resize(n);
  std::size_t row = 0;
  for (std::size_t t : selected) {
    for (const FeatureMatrix &chunk : tracks[t].chunks) {
      std::copy(chunk.data().begin(), chunk.data().end(), x->row(row));
      (*y)[row] = tracks[t].label;
      ++row;
    }
  }
}

ChunkSet make_chunkset(const std::vector<TrackData> &tracks,
                       const std::vector<std::size_t> &selected,
                       const std::vector<std::string> &class_names) {
  ChunkSet set;
  set.class_names = class_names;
  for (std::size_t local = 0; local < selected.size(); ++local) {
    const TrackData &track = tracks[selected[local]];
    set.track_labels.push_back(track.label);
    for (const FeatureMatrix &chunk : track.chunks) {
      set.chunks.push_back(chunk);
      set.parent_track.push_back(local);
    }
  }
  return set;
}

std::string read_file_bytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig &cfg,
                                const DatasetManifest &manifest,
                                const std::filesystem::path &cache_dir) {
  if (cfg.n_repeats < 1)
    throw ArgumentError("run_experiment: n_repeats must be >= 1");
  std::filesystem::create_directories(cache_dir);

  const std::size_t n_tracks = manifest.entries.size();
  const std::size_t n_classes = manifest.class_names.size();
  const std::string params_key =
      feature_params_key(cfg.feature, cfg.feature_params);

  // Feature extraction, cached by content hash, parallel across tracks.
  std::vector<TrackData> tracks(n_tracks);
  std::mutex cache_mutex;
  parallel_for(n_tracks, cfg.jobs, [&](std::size_t t) {
    const ManifestEntry &entry = manifest.entries[t];
    const std::filesystem::path audio_path = manifest.base_dir / entry.path;
    std::string bytes;
    try {
      bytes = read_file_bytes(audio_path);
    } catch (const Error &e) {
      throw DataError("feature extraction failed for " + entry.path + ": " +
                      e.what());
    }
    const std::string key = sha256_hex(bytes + "\n" + params_key);
    const std::filesystem::path cached = cache_dir / (key + ".adf");

    FeatureMatrix features;
    bool have_cached = false;
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      have_cached = std::filesystem::exists(cached);
    }
    if (have_cached) {
      features = read_features(cached);
    } else {
      Signal signal;
      try {
        signal = load_wav(audio_path);
        features = extract_feature(signal, cfg.feature, cfg.feature_params);
      } catch (const Error &e) {
        throw DataError("feature extraction failed for " + entry.path + ": " +
                        e.what());
      }
      std::lock_guard<std::mutex> lock(cache_mutex);
      if (!std::filesystem::exists(cached)) {
        const std::filesystem::path tmp =
            cache_dir / (key + ".tmp" + std::to_string(t));
        write_features(tmp, features);
        std::filesystem::rename(tmp, cached);
      }
    }
    tracks[t].chunks = chunk_sequence(features, cfg.feature_params.chunk_len,
                                      cfg.feature_params.overlap);
    tracks[t].label = manifest.label_index(entry.label);
  });

  std::vector<int> track_labels(n_tracks);
  for (std::size_t t = 0; t < n_tracks; ++t)
    track_labels[t] = tracks[t].label;

  // Repeats are independent given their seeds; run them in parallel and
  // collect by index.
  std::vector<RepeatResult> repeats(static_cast<std::size_t>(cfg.n_repeats));
  parallel_for(repeats.size(), cfg.jobs, [&](std::size_t r) {
    const std::vector<bool> is_test = stratified_split(
        track_labels, n_classes, cfg.test_fraction, cfg.split_seed + r);
    std::vector<std::size_t> train_ids, test_ids;
    for (std::size_t t = 0; t < n_tracks; ++t)
      (is_test[t] ? test_ids : train_ids).push_back(t);
    if (train_ids.empty() || test_ids.empty())
      throw DataError("run_experiment: degenerate split");

    const std::uint64_t repeat_seed = cfg.classifier.seed + r;
    const ChunkSet test_set =
        make_chunkset(tracks, test_ids, manifest.class_names);

    EvalResult mean_eval, vote_eval;
    if (cfg.classifier.kind == ClassifierKind::kSvm) {
      FeatureMatrix x;
      std::vector<int> y;
      flatten_chunks(tracks, train_ids, &x, &y);
      SvmConfig svm_cfg;
      svm_cfg.lambda = cfg.classifier.lambda;
      svm_cfg.epochs = cfg.classifier.epochs;
      svm_cfg.seed = repeat_seed;
      const LinearModel model =
          svm_train(x, y, manifest.class_names, svm_cfg);
      mean_eval = evaluate(model, test_set, Aggregation::kProbMean);
      vote_eval = evaluate(model, test_set, Aggregation::kChunkVote);
    } else {
      const ChunkSet train_set =
          make_chunkset(tracks, train_ids, manifest.class_names);
      // Per-column standardization from the training frames only.
      std::size_t total_rows = 0;
      for (const FeatureMatrix &chunk : train_set.chunks)
        total_rows += chunk.rows();
      FeatureMatrix stacked(total_rows, train_set.chunks.front().cols());
      std::size_t row = 0;
      for (const FeatureMatrix &chunk : train_set.chunks)
        for (std::size_t m = 0; m < chunk.rows(); ++m, ++row)
          std::copy(chunk.row(m), chunk.row(m) + chunk.cols(),
                    stacked.row(row));
      RnnModel init =
          rnn_init(stacked.cols(), cfg.classifier.hidden, n_classes,
                   repeat_seed);
      init.class_names = manifest.class_names;
      init.standardizer = fit_standardizer(stacked);
      RnnTrainConfig rnn_cfg;
      rnn_cfg.lr = cfg.classifier.lr;
      rnn_cfg.epochs = cfg.classifier.epochs;
      rnn_cfg.clip = cfg.classifier.clip;
      rnn_cfg.seed = repeat_seed;
      const RnnTrainResult trained = rnn_train(init, train_set, rnn_cfg);
      mean_eval = evaluate(trained.model, test_set, Aggregation::kProbMean);
      vote_eval = evaluate(trained.model, test_set, Aggregation::kChunkVote);
    }

    RepeatResult &out = repeats[r];
    out.accuracy_prob_mean = mean_eval.track_accuracy;
    out.accuracy_chunk_vote = vote_eval.track_accuracy;
    const EvalResult &selected =
        cfg.classifier.agg == Aggregation::kProbMean ? mean_eval : vote_eval;
    out.track_accuracy = selected.track_accuracy;
    out.chunk_accuracy = selected.chunk_accuracy;
    out.confusion = selected.confusion;
  });

  ExperimentReport report;
  report.repeats = std::move(repeats);
  report.class_names = manifest.class_names;
  report.confusion.assign(n_classes * n_classes, 0);
  double sum = 0.0;
  for (const RepeatResult &r : report.repeats) {
    sum += r.track_accuracy;
    for (std::size_t i = 0; i < r.confusion.size(); ++i)
      report.confusion[i] += r.confusion[i];
  }
  report.mean_accuracy = sum / static_cast<double>(report.repeats.size());
  double sq = 0.0;
  for (const RepeatResult &r : report.repeats) {
    const double d = r.track_accuracy - report.mean_accuracy;
    sq += d * d;
  }
  report.std_accuracy =
      report.repeats.size() > 1
          ? std::sqrt(sq / static_cast<double>(report.repeats.size() - 1))
          : 0.0;

  std::ostringstream cfg_line;
  cfg_line << params_key << ";classifier="
           << (cfg.classifier.kind == ClassifierKind::kSvm ? "svm" : "rnn")
           << ";lr=" << fmt(cfg.classifier.lr)
           << ";epochs=" << cfg.classifier.epochs
           << ";hidden=" << cfg.classifier.hidden
           << ";lambda=" << fmt(cfg.classifier.lambda)
           << ";clip=" << fmt(cfg.classifier.clip)
           << ";seed=" << cfg.classifier.seed << ";agg="
           << (cfg.classifier.agg == Aggregation::kProbMean ? "mean" : "vote")
           << ";n_repeats=" << cfg.n_repeats
           << ";split_seed=" << cfg.split_seed
           << ";test_fraction=" << fmt(cfg.test_fraction);
  report.config_line = cfg_line.str();
  return report;
}

std::string ExperimentReport::to_text() const {
  std::ostringstream out;
  out << "adctnet experiment report\n";
  out << "config: " << config_line << "\n";
  out << "protocol: repeated stratified train/test track splits; "
         "accuracy is track-level under the configured aggregation\n";
  out << "classes:";
  for (const std::string &name : class_names) out << " " << name;
  out << "\n";
  for (std::size_t r = 0; r < repeats.size(); ++r) {
    const RepeatResult &rep = repeats[r];
    out << "repeat " << r << ": track=" << fmt_acc(rep.track_accuracy)
        << " chunk=" << fmt_acc(rep.chunk_accuracy)
        << " prob_mean=" << fmt_acc(rep.accuracy_prob_mean)
        << " chunk_vote=" << fmt_acc(rep.accuracy_chunk_vote) << "\n";
  }
  out << "track accuracy: mean=" << fmt_acc(mean_accuracy)
      << " std=" << fmt_acc(std_accuracy) << "\n";
  out << "confusion (rows=true, cols=predicted, summed over repeats):\n";
  const std::size_t n = class_names.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << class_names[i] << ":";
    for (std::size_t j = 0; j < n; ++j) out << " " << confusion[i * n + j];
    out << "\n";
  }
  return out.str();
}

ExperimentConfig parse_experiment_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  ExperimentConfig cfg;
  std::string section;
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string &msg) -> void {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                     msg);
  };
  auto unquote = [&](std::string v) -> std::string {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
      return v.substr(1, v.size() - 2);
    return v;
  };
  auto to_double = [&](const std::string &v) -> double {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) fail("bad number: " + v);
      return d;
    } catch (const std::logic_error &) {
      fail("bad number: " + v);
    }
    return 0.0;
  };
  auto to_u64 = [&](const std::string &v) -> std::uint64_t {
    const double d = to_double(v);
    if (d < 0) fail("expected non-negative integer: " + v);
    return static_cast<std::uint64_t>(d);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos && line.find('"') == std::string::npos)
      line = line.substr(0, hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "experiment" && section != "feature" &&
          section != "classifier")
        fail("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value = unquote(value);
    if (key.empty() || value.empty()) fail("empty key or value");

    if (section == "experiment") {
      if (key == "feature")
        cfg.feature = feature_kind_from_name(value);
      else if (key == "classifier") {
        if (value == "svm")
          cfg.classifier.kind = ClassifierKind::kSvm;
        else if (value == "rnn")
          cfg.classifier.kind = ClassifierKind::kRnn;
        else
          fail("classifier must be svm or rnn");
      } else if (key == "n_repeats")
        cfg.n_repeats = static_cast<int>(to_u64(value));
      else if (key == "split_seed")
        cfg.split_seed = to_u64(value);
      else if (key == "test_fraction")
        cfg.test_fraction = to_double(value);
      else if (key == "jobs")
        cfg.jobs = static_cast<int>(to_u64(value));
      else
        fail("unknown key " + key + " in [experiment]");
    } else if (section == "feature") {
      FeatureParams &p = cfg.feature_params;
      if (key == "fmin")
        p.fmin = to_double(value);
      else if (key == "fmax")
        p.fmax = to_double(value);
      else if (key == "fmin2")
        p.fmin2 = to_double(value);
      else if (key == "fmax2")
        p.fmax2 = to_double(value);
      else if (key == "b1")
        p.b1 = static_cast<int>(to_u64(value));
      else if (key == "b2")
        p.b2 = static_cast<int>(to_u64(value));
      else if (key == "win")
        p.win = to_u64(value);
      else if (key == "win2")
        p.win2 = to_u64(value);
      else if (key == "hop")
        p.hop = to_u64(value);
      else if (key == "hop2")
        p.hop2 = to_u64(value);
      else if (key == "nfilters")
        p.nfilters = to_u64(value);
      else if (key == "min_len")
        p.min_len = to_u64(value);
      else if (key == "max_len")
        p.max_len = to_u64(value);
      else if (key == "chunk_len")
        p.chunk_len = to_u64(value);
      else if (key == "overlap")
        p.overlap = to_u64(value);
      else if (key == "window") {
        if (value == "hamming")
          p.window = WindowKind::kHamming;
        else if (value == "hann")
          p.window = WindowKind::kHann;
        else if (value == "rectangular")
          p.window = WindowKind::kRectangular;
        else
          fail("unknown window kind " + value);
      } else if (key == "log")
        p.log_output = (value == "true" || value == "1");
      else if (key == "log_eps")
        p.log_eps = to_double(value);
      else
        fail("unknown key " + key + " in [feature]");
    } else if (section == "classifier") {
      ClassifierParams &c = cfg.classifier;
      if (key == "lr")
        c.lr = to_double(value);
      else if (key == "epochs")
        c.epochs = static_cast<int>(to_u64(value));
      else if (key == "hidden")
        c.hidden = to_u64(value);
      else if (key == "lambda")
        c.lambda = to_double(value);
      else if (key == "clip")
        c.clip = to_double(value);
      else if (key == "seed")
        c.seed = to_u64(value);
      else if (key == "agg") {
        if (value == "mean")
          c.agg = Aggregation::kProbMean;
        else if (value == "vote")
          c.agg = Aggregation::kChunkVote;
        else
          fail("agg must be mean or vote");
      } else
        fail("unknown key " + key + " in [classifier]");
    } else {
      fail("key outside any section");
    }
  }
  return cfg;
}

void emit_plot(const FeatureMatrix &fm, const std::filesystem::path &path) {
  if (fm.rows() == 0 || fm.cols() == 0)
    throw ArgumentError("emit_plot: empty matrix");
  for (double v : fm.data())
    if (!std::isfinite(v)) throw ArgumentError("emit_plot: non-finite entry");

  const auto [lo_it, hi_it] =
      std::minmax_element(fm.data().begin(), fm.data().end());
  const double lo = *lo_it, hi = *hi_it;
  const bool constant = !(hi > lo);

  // Rows of the image are channels, low frequency at the bottom.
  const std::size_t width = fm.rows();
  const std::size_t height = fm.cols();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << "P5\n" << width << " " << height << "\n255\n";
  std::vector<unsigned char> scanline(width);
  for (std::size_t r = 0; r < height; ++r) {
    const std::size_t channel = height - 1 - r;
    for (std::size_t m = 0; m < width; ++m) {
      if (constant) {
        scanline[m] = 128;
      } else {
        const double v = (fm.at(m, channel) - lo) / (hi - lo);
        scanline[m] = static_cast<unsigned char>(std::lround(v * 255.0));
      }
    }
    out.write(reinterpret_cast<const char *>(scanline.data()),
              static_cast<std::streamsize>(width));
  }
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace adct
