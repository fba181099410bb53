// src/svm.cc

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

// One-vs-rest linear SVM trained by the stochastic subgradient method with
// the 1/(lambda t) step schedule, on standardized features.

#include "adctnet/classifiers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace adct {

namespace {

// Hinge subgradient step for one binary problem. w and b are this class's
// weight row and bias; the bias rides along unregularized-free at the same
// learning rate.
inline void pegasos_step(double *w, double &b, std::size_t dim,
                         const double *x, double y, double lambda,
                         double eta) {
  double score = b;
  for (std::size_t d = 0; d < dim; ++d) score += w[d] * x[d];
  const double decay = 1.0 - eta * lambda;
  for (std::size_t d = 0; d < dim; ++d) w[d] *= decay;
  if (y * score < 1.0) {
    for (std::size_t d = 0; d < dim; ++d) w[d] += eta * y * x[d];
    b += eta * y;
  }
}

}  // namespace

LinearModel svm_train(const FeatureMatrix &x, const std::vector<int> &y,
                      const std::vector<std::string> &class_names,
                      const SvmConfig &cfg) {
  if (x.rows() == 0) throw DataError("svm_train: no samples");
  if (y.size() != x.rows())
    throw ArgumentError("svm_train: label count != sample count");
  if (class_names.size() < 2) throw DataError("svm_train: need >= 2 classes");
  if (cfg.lambda <= 0.0) throw ArgumentError("svm_train: lambda must be > 0");
  if (cfg.epochs < 1) throw ArgumentError("svm_train: epochs must be >= 1");
  for (double v : x.data())
    if (!std::isfinite(v)) throw NumericError("svm_train: non-finite feature");
  for (int label : y)
    if (label < 0 || static_cast<std::size_t>(label) >= class_names.size())
      throw ArgumentError("svm_train: label out of range");
  {
    const int first = y.front();
    if (std::all_of(y.begin(), y.end(),
                    [first](int l) { return l == first; }))
      throw DataError("svm_train: all samples carry a single class");
  }

  LinearModel model;
  model.dim = x.cols();
  model.class_names = class_names;
  model.standardizer = fit_standardizer(x);
  model.weights.assign(class_names.size() * x.cols(), 0.0);
  model.bias.assign(class_names.size(), 0.0);

  // Standardize once up front.
  FeatureMatrix z = x;
  for (std::size_t m = 0; m < z.rows(); ++m)
    model.standardizer.apply({z.row(m), z.cols()});

  const std::size_t n = z.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(cfg.seed);

  std::size_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
      const double *xi = z.row(i);
      for (std::size_t c = 0; c < model.n_classes(); ++c) {
        const double target = (y[i] == static_cast<int>(c)) ? 1.0 : -1.0;
        pegasos_step(model.weights.data() + c * model.dim, model.bias[c],
                     model.dim, xi, target, cfg.lambda, eta);
      }
    }
  }
  return model;
}

std::pair<int, std::vector<double>> svm_predict(const LinearModel &model,
                                                std::span<const double> x) {
  if (x.size() != model.dim)
    throw ArgumentError("svm_predict: input dim " + std::to_string(x.size()) +
                        " != model dim " + std::to_string(model.dim));
  std::vector<double> z(x.begin(), x.end());
  model.standardizer.apply(z);
  std::vector<double> scores(model.n_classes());
  for (std::size_t c = 0; c < model.n_classes(); ++c) {
    const double *w = model.weights.data() + c * model.dim;
    double acc = model.bias[c];
    for (std::size_t d = 0; d < model.dim; ++d) acc += w[d] * z[d];
    scores[c] = acc;
  }
  int best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c)
    if (scores[c] > scores[static_cast<std::size_t>(best)])
      best = static_cast<int>(c);
  return {best, std::move(scores)};
}

double svm_objective(const LinearModel &model, const FeatureMatrix &x,
                     const std::vector<int> &y, double lambda) {
  FeatureMatrix z = x;
  for (std::size_t m = 0; m < z.rows(); ++m)
    model.standardizer.apply({z.row(m), z.cols()});
  double total = 0.0;
  for (std::size_t c = 0; c < model.n_classes(); ++c) {
    const double *w = model.weights.data() + c * model.dim;
    double norm2 = 0.0;
    for (std::size_t d = 0; d < model.dim; ++d) norm2 += w[d] * w[d];
    double hinge = 0.0;
    for (std::size_t m = 0; m < z.rows(); ++m) {
      const double target = (y[m] == static_cast<int>(c)) ? 1.0 : -1.0;
      double score = model.bias[c];
      const double *xi = z.row(m);
      for (std::size_t d = 0; d < model.dim; ++d) score += w[d] * xi[d];
      hinge += std::max(0.0, 1.0 - target * score);
    }
    total += 0.5 * lambda * norm2 + hinge / static_cast<double>(z.rows());
  }
  return total / static_cast<double>(model.n_classes());
}

}  // namespace adct
