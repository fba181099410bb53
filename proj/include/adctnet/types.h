// adctnet/types.h

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

#ifndef ADCTNET_TYPES_H_
#define ADCTNET_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adct {

// Error taxonomy. The CLI maps these onto exit codes: ArgumentError -> 1,
// the data/format family -> 2, NumericError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values or preconditions violated by the caller.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed binary containers: bad magic, truncated payloads.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Recognized container but a codec/layout we do not handle.
class UnsupportedFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Text inputs that fail to parse (manifests, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input whose content cannot be processed
// (empty signals, inputs shorter than an analysis window, duplicates).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values where finite ones are required (NaN loss and friends).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A mono audio signal. Samples are dimensionless amplitudes, nominally in
// [-1, 1]; sample_rate is in Hz.
struct Signal {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;
};

// Real matrix of features indexed (time frame m, channel k), row-major.
// frame_hop is the frame step in input samples; center_freqs optionally
// carries one center frequency in Hz per channel (empty otherwise).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, std::uint32_t hop = 1)
      : frame_hop(hop), rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &at(std::size_t m, std::size_t k) { return data_[m * cols_ + k]; }
  double at(std::size_t m, std::size_t k) const { return data_[m * cols_ + k]; }

  double *row(std::size_t m) { return data_.data() + m * cols_; }
  const double *row(std::size_t m) const { return data_.data() + m * cols_; }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  std::uint32_t frame_hop = 1;
  std::vector<double> center_freqs;  // empty or size cols()

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// 3-D array indexed (m, k1, k2): the two-layer cascade output before
// pooling. hop is the composed frame step in input samples.
struct LayeredTensor {
  std::size_t frames = 0;
  std::size_t n_k1 = 0;
  std::size_t n_k2 = 0;
  std::uint32_t hop = 1;
  std::vector<double> data;  // (m, k1, k2) row-major

  LayeredTensor() = default;
  LayeredTensor(std::size_t m, std::size_t k1, std::size_t k2,
                std::uint32_t hop_samples)
      : frames(m), n_k1(k1), n_k2(k2), hop(hop_samples),
        data(m * k1 * k2, 0.0) {}

  double &at(std::size_t m, std::size_t i, std::size_t j) {
    return data[(m * n_k1 + i) * n_k2 + j];
  }
  double at(std::size_t m, std::size_t i, std::size_t j) const {
    return data[(m * n_k1 + i) * n_k2 + j];
  }
};

}  // namespace adct

#endif  // ADCTNET_TYPES_H_
