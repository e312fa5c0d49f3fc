// Copyright 2026  The snsd Authors

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

#ifndef SNSD_SYNTH_MANIFEST_H_
#define SNSD_SYNTH_MANIFEST_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace snsd::synth {

// One synthesized (noisy, clean, noise) triplet. Paths are relative to the
// manifest's directory.
struct MixtureRecord {
  std::string clip_id;
  std::filesystem::path noisy_path;
  std::filesystem::path clean_path;
  std::filesystem::path noise_path;
  double snr_db = 0.0;
  std::string noise_type;
  std::string speaker_id;
  // Clips built from the same clean segment share this id.
  std::string segment_id;
  double duration_s = 0.0;
  double post_mix_gain = 1.0;

  friend bool operator==(const MixtureRecord &, const MixtureRecord &) = default;
};

inline constexpr const char *kManifestFileName = "manifest.tsv";

// UTF-8 TSV with a header row, one record per line.
std::string FormatManifest(const std::vector<MixtureRecord> &records);
void WriteManifest(const std::vector<MixtureRecord> &records,
                   const std::filesystem::path &path);
std::vector<MixtureRecord> ParseManifest(const std::string &text,
                                         const std::string &source);
std::vector<MixtureRecord> ReadManifest(const std::filesystem::path &path);

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_MANIFEST_H_
