// src/rnn.cc

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

// Single-hidden-layer tanh recurrence with softmax readout, trained by full
// backpropagation through time and plain SGD.

#include "adctnet/classifiers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace adct {

namespace {

// y += M x, with M row-major (rows x cols).
inline void mat_vec_add(const double *m, std::size_t rows, std::size_t cols,
                        const double *x, double *y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double *row = m + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
}

// y += M^T x, with M row-major (rows x cols); x has `rows` entries.
inline void mat_tvec_add(const double *m, std::size_t rows, std::size_t cols,
                         const double *x, double *y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const double *row = m + r * cols;
    for (std::size_t c = 0; c < cols; ++c) y[c] += xr * row[c];
  }
}

void softmax_inplace(std::vector<double> &v) {
  const double m = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double &x : v) {
    x = std::exp(x - m);
    sum += x;
  }
  for (double &x : v) x /= sum;
}

// Orthogonal factor of a seeded Gaussian matrix via Householder QR, signs
// fixed so the factorization is unique (diag(R) > 0).
std::vector<double> random_orthogonal(std::size_t h, std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> a(h * h);
  for (double &v : a) v = gauss(rng);

  std::vector<std::vector<double>> reflectors;
  std::vector<double> diag_r(h, 1.0);
  std::vector<double> v(h);
  for (std::size_t j = 0; j < h; ++j) {
    double norm2 = 0.0;
    for (std::size_t i = j; i < h; ++i) norm2 += a[i * h + j] * a[i * h + j];
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      reflectors.emplace_back();
      diag_r[j] = 0.0;
      continue;
    }
    const double x0 = a[j * h + j];
    const double alpha = (x0 >= 0.0) ? -norm : norm;
    std::vector<double> w(h - j);
    w[0] = x0 - alpha;
    for (std::size_t i = j + 1; i < h; ++i) w[i - j] = a[i * h + j];
    double w_norm2 = 0.0;
    for (double wi : w) w_norm2 += wi * wi;
    diag_r[j] = alpha;
    if (w_norm2 == 0.0) {
      reflectors.emplace_back();
      continue;
    }
    const double beta = 2.0 / w_norm2;
    // Apply I - beta w w^T to the trailing block of A.
    for (std::size_t c = j; c < h; ++c) {
      double dot = 0.0;
      for (std::size_t i = j; i < h; ++i) dot += w[i - j] * a[i * h + c];
      const double f = beta * dot;
      for (std::size_t i = j; i < h; ++i) a[i * h + c] -= f * w[i - j];
    }
    reflectors.push_back(std::move(w));
  }

  // Q = H_0 H_1 ... H_{h-1} I.
  std::vector<double> q(h * h, 0.0);
  for (std::size_t i = 0; i < h; ++i) q[i * h + i] = 1.0;
  for (std::size_t jj = h; jj-- > 0;) {
    const std::vector<double> &w = reflectors[jj];
    if (w.empty()) continue;
    double w_norm2 = 0.0;
    for (double wi : w) w_norm2 += wi * wi;
    const double beta = 2.0 / w_norm2;
    for (std::size_t c = 0; c < h; ++c) {
      double dot = 0.0;
      for (std::size_t i = jj; i < h; ++i) dot += w[i - jj] * q[i * h + c];
      const double f = beta * dot;
      for (std::size_t i = jj; i < h; ++i) q[i * h + c] -= f * w[i - jj];
    }
  }
  for (std::size_t j = 0; j < h; ++j) {
    if (diag_r[j] < 0.0)
      for (std::size_t i = 0; i < h; ++i) q[i * h + j] = -q[i * h + j];
  }
  return q;
}

struct Gradients {
  std::vector<double> w_in, w_rec, b_h, v, b_y;

  explicit Gradients(const RnnModel &m)
      : w_in(m.w_in.size(), 0.0),
        w_rec(m.w_rec.size(), 0.0),
        b_h(m.b_h.size(), 0.0),
        v(m.v.size(), 0.0),
        b_y(m.b_y.size(), 0.0) {}

  double norm() const {
    double acc = 0.0;
    for (const auto *block : {&w_in, &w_rec, &b_h, &v, &b_y})
      for (double g : *block) acc += g * g;
    return std::sqrt(acc);
  }

  void scale(double s) {
    for (auto *block : {&w_in, &w_rec, &b_h, &v, &b_y})
      for (double &g : *block) g *= s;
  }
};

// Forward pass over a standardized chunk, keeping the hidden trajectory.
// Returns the probability vector.
std::vector<double> forward_states(const RnnModel &m, const FeatureMatrix &seq,
                                   std::vector<double> *hidden_out) {
  const std::size_t t_len = seq.rows();
  const std::size_t h = m.hidden_dim;
  std::vector<double> hidden((t_len + 1) * h, 0.0);  // h_0 ... h_T
  for (std::size_t t = 0; t < t_len; ++t) {
    double *h_t = hidden.data() + (t + 1) * h;
    std::copy(m.b_h.begin(), m.b_h.end(), h_t);
    mat_vec_add(m.w_in.data(), h, m.input_dim, seq.row(t), h_t);
    mat_vec_add(m.w_rec.data(), h, h, hidden.data() + t * h, h_t);
    for (std::size_t i = 0; i < h; ++i) h_t[i] = std::tanh(h_t[i]);
  }
  std::vector<double> logits(m.b_y);
  mat_vec_add(m.v.data(), m.n_classes, h, hidden.data() + t_len * h,
              logits.data());
  softmax_inplace(logits);
  if (hidden_out) *hidden_out = std::move(hidden);
  return logits;
}

FeatureMatrix standardized(const RnnModel &m, const FeatureMatrix &seq) {
  if (m.standardizer.empty()) return seq;
  FeatureMatrix z = seq;
  for (std::size_t t = 0; t < z.rows(); ++t)
    m.standardizer.apply({z.row(t), z.cols()});
  return z;
}

// Cross-entropy loss and full BPTT gradients for one (already standardized)
// chunk.
double backward(const RnnModel &m, const FeatureMatrix &seq, int label,
                Gradients &grads) {
  const std::size_t t_len = seq.rows();
  const std::size_t h = m.hidden_dim;
  std::vector<double> hidden;
  std::vector<double> probs = forward_states(m, seq, &hidden);
  const double loss =
      -std::log(std::max(probs[static_cast<std::size_t>(label)], 1e-300));

  std::vector<double> dlogits = probs;
  dlogits[static_cast<std::size_t>(label)] -= 1.0;

  const double *h_last = hidden.data() + t_len * h;
  for (std::size_t c = 0; c < m.n_classes; ++c) {
    grads.b_y[c] += dlogits[c];
    double *gv = grads.v.data() + c * h;
    for (std::size_t i = 0; i < h; ++i) gv[i] += dlogits[c] * h_last[i];
  }

  std::vector<double> dh(h, 0.0);
  mat_tvec_add(m.v.data(), m.n_classes, h, dlogits.data(), dh.data());

  std::vector<double> dz(h);
  for (std::size_t t = t_len; t-- > 0;) {
    const double *h_t = hidden.data() + (t + 1) * h;
    const double *h_prev = hidden.data() + t * h;
    for (std::size_t i = 0; i < h; ++i)
      dz[i] = dh[i] * (1.0 - h_t[i] * h_t[i]);
    const double *x_t = seq.row(t);
    for (std::size_t i = 0; i < h; ++i) {
      const double g = dz[i];
      if (g == 0.0) continue;
      grads.b_h[i] += g;
      double *gi = grads.w_in.data() + i * m.input_dim;
      for (std::size_t d = 0; d < m.input_dim; ++d) gi[d] += g * x_t[d];
      double *gr = grads.w_rec.data() + i * h;
      for (std::size_t j = 0; j < h; ++j) gr[j] += g * h_prev[j];
    }
    std::fill(dh.begin(), dh.end(), 0.0);
    mat_tvec_add(m.w_rec.data(), h, h, dz.data(), dh.data());
  }
  return loss;
}

double chunk_loss(const RnnModel &m, const FeatureMatrix &seq, int label) {
  const std::vector<double> probs = forward_states(m, seq, nullptr);
  return -std::log(std::max(probs[static_cast<std::size_t>(label)], 1e-300));
}

}  // namespace

RnnModel rnn_init(std::size_t input_dim, std::size_t hidden_dim,
                  std::size_t n_classes, std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0 || n_classes == 0)
    throw ArgumentError("rnn_init: dims must be >= 1");
  RnnModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.n_classes = n_classes;
  std::mt19937_64 rng(seed);
  m.w_rec = random_orthogonal(hidden_dim, rng);
  std::uniform_real_distribution<double> uniform(-0.01, 0.01);
  m.w_in.resize(hidden_dim * input_dim);
  for (double &v : m.w_in) v = uniform(rng);
  m.v.resize(n_classes * hidden_dim);
  for (double &v : m.v) v = uniform(rng);
  m.b_h.assign(hidden_dim, 0.0);
  m.b_y.assign(n_classes, 0.0);
  return m;
}

std::vector<double> rnn_forward(const RnnModel &model,
                                const FeatureMatrix &seq) {
  if (seq.rows() == 0) throw DataError("rnn_forward: empty sequence");
  if (seq.cols() != model.input_dim)
    throw ArgumentError("rnn_forward: input dim " +
                        std::to_string(seq.cols()) + " != model dim " +
                        std::to_string(model.input_dim));
  const FeatureMatrix z = standardized(model, seq);
  return forward_states(model, z, nullptr);
}

RnnTrainResult rnn_train(const RnnModel &model, const ChunkSet &data,
                         const RnnTrainConfig &cfg) {
  if (data.chunks.empty()) throw DataError("rnn_train: empty chunk set");
  if (cfg.epochs < 0) throw ArgumentError("rnn_train: negative epochs");

  RnnTrainResult result;
  result.model = model;
  RnnModel &m = result.model;

  // Standardize every chunk once; the statistics stay in the model.
  std::vector<FeatureMatrix> z;
  z.reserve(data.chunks.size());
  for (const FeatureMatrix &chunk : data.chunks)
    z.push_back(standardized(m, chunk));
  std::vector<int> labels(data.chunks.size());
  for (std::size_t c = 0; c < data.chunks.size(); ++c) {
    const int label = data.track_labels[data.parent_track[c]];
    if (label < 0 || static_cast<std::size_t>(label) >= m.n_classes)
      throw ArgumentError("rnn_train: label out of range");
    labels[c] = label;
  }

  double init_loss = 0.0;
  for (std::size_t c = 0; c < z.size(); ++c)
    init_loss += chunk_loss(m, z[c], labels[c]);
  result.epoch_loss.push_back(init_loss / static_cast<double>(z.size()));

  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(cfg.seed);

  Gradients grads(m);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t c : order) {
      std::fill(grads.w_in.begin(), grads.w_in.end(), 0.0);
      std::fill(grads.w_rec.begin(), grads.w_rec.end(), 0.0);
      std::fill(grads.b_h.begin(), grads.b_h.end(), 0.0);
      std::fill(grads.v.begin(), grads.v.end(), 0.0);
      std::fill(grads.b_y.begin(), grads.b_y.end(), 0.0);
      const double loss = backward(m, z[c], labels[c], grads);
      if (!std::isfinite(loss))
        throw NumericError("rnn_train: non-finite loss at epoch " +
                           std::to_string(epoch) + ", chunk " +
                           std::to_string(c));
      epoch_loss += loss;
      const double norm = grads.norm();
      if (cfg.clip > 0.0 && norm > cfg.clip) grads.scale(cfg.clip / norm);
      const double lr = cfg.lr;
      for (std::size_t i = 0; i < m.w_in.size(); ++i)
        m.w_in[i] -= lr * grads.w_in[i];
      for (std::size_t i = 0; i < m.w_rec.size(); ++i)
        m.w_rec[i] -= lr * grads.w_rec[i];
      for (std::size_t i = 0; i < m.b_h.size(); ++i)
        m.b_h[i] -= lr * grads.b_h[i];
      for (std::size_t i = 0; i < m.v.size(); ++i)
        m.v[i] -= lr * grads.v[i];
      for (std::size_t i = 0; i < m.b_y.size(); ++i)
        m.b_y[i] -= lr * grads.b_y[i];
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(z.size()));
  }
  return result;
}

double rnn_gradient_check(const RnnModel &model, const FeatureMatrix &chunk,
                          int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= model.n_classes)
    throw ArgumentError("rnn_gradient_check: label out of range");
  RnnModel m = model;
  const FeatureMatrix z = standardized(m, chunk);

  Gradients analytic(m);
  (void)backward(m, z, label, analytic);

  const double step = 1e-5;
  double worst = 0.0;
  auto probe = [&](std::vector<double> &params,
                   const std::vector<double> &grad) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double saved = params[i];
      params[i] = saved + step;
      const double up = chunk_loss(m, z, label);
      params[i] = saved - step;
      const double down = chunk_loss(m, z, label);
      params[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double denom =
          std::max({std::abs(grad[i]), std::abs(numeric), 1e-8});
      worst = std::max(worst, std::abs(grad[i] - numeric) / denom);
    }
  };
  probe(m.w_in, analytic.w_in);
  probe(m.w_rec, analytic.w_rec);
  probe(m.b_h, analytic.b_h);
  probe(m.v, analytic.v);
  probe(m.b_y, analytic.b_y);
  return worst;
}

}  // namespace adct
