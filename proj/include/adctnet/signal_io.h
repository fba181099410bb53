// adctnet/signal_io.h

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

#ifndef ADCTNET_SIGNAL_IO_H_
#define ADCTNET_SIGNAL_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "adctnet/types.h"

namespace adct {

struct ManifestEntry {
  std::string path;   // relative to the manifest's directory
  std::string label;
};

// Dataset manifest: ordered file entries plus the sorted unique label list.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> class_names;  // sorted lexicographically
  std::filesystem::path base_dir;        // directory of the manifest file

  int label_index(const std::string &label) const;
};

// Reads a RIFF/WAVE file. PCM 16-bit and IEEE float 32-bit, mono or stereo.
// Stereo is downmixed by averaging; 16-bit samples are scaled by 1/32768.
Signal load_wav(const std::filesystem::path &path);

// Binary feature container, magic "ADF1":
//   u32 rows, u32 cols, u32 frame_hop, u8 has_freqs,
//   [cols x f64 center frequencies,] rows*cols f64 row-major.
// All fields little-endian; round-trips bit-exactly.
void write_features(const std::filesystem::path &path, const FeatureMatrix &fm);
FeatureMatrix read_features(const std::filesystem::path &path);

// Parses a TAB-separated manifest: one "relative_path<TAB>label" per line,
// '#' comment lines and blank lines ignored.
DatasetManifest load_manifest(const std::filesystem::path &path);

}  // namespace adct

#endif  // ADCTNET_SIGNAL_IO_H_
