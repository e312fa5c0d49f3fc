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

#ifndef SNSD_SYNTH_INVENTORY_H_
#define SNSD_SYNTH_INVENTORY_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snsd/audio/audio_clip.h"

namespace snsd::synth {

struct CleanUtterance {
  std::string speaker_id;
  std::filesystem::path path;
  double duration_s = 0.0;
};

struct NoiseRecording {
  std::string noise_type;
  std::filesystem::path path;
  double duration_s = 0.0;
};

// Clean speech and noise sources, each list ordered by (label, path).
struct SourceInventory {
  std::vector<CleanUtterance> clean_utterances;
  std::vector<NoiseRecording> noise_recordings;

  // Sorted, unique.
  std::vector<std::string> Speakers() const;
  std::vector<std::string> NoiseTypes() const;
  // Indices into clean_utterances / noise_recordings.
  std::vector<std::size_t> UtterancesOf(std::string_view speaker_id) const;
  std::vector<std::size_t> RecordingsOf(std::string_view noise_type) const;
};

struct ScanResult {
  SourceInventory inventory;
  // One entry per file that could not be decoded and was skipped.
  std::vector<std::string> warnings;
};

// Label for a source file: the first directory below the scanned root, or,
// for files directly in the root, the file-name stem up to the first '_' or
// '-' ("p225_001.wav" -> "p225", "AirConditioner_3.wav" -> "AirConditioner").
std::string InferSourceLabel(const std::filesystem::path &relative_path);

// Recursively collects *.wav files. Undecodable files are skipped and
// reported in `warnings`. Throws InputDataError if a directory is missing or
// yields no usable file.
ScanResult ScanSources(const std::filesystem::path &clean_dir,
                       const std::filesystem::path &noise_dir);

// Decoded sources at one working rate, index-aligned with the inventory.
class SourceLibrary {
 public:
  // Reads and resamples every inventory file to `sample_rate_hz`.
  static SourceLibrary Load(SourceInventory inventory, int sample_rate_hz);
  // Builds a library from clips already in memory (paths are informational).
  static SourceLibrary FromClips(SourceInventory inventory,
                                 std::vector<audio::AudioClip> clean,
                                 std::vector<audio::AudioClip> noise);

  const SourceInventory &inventory() const { return inventory_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  const audio::AudioClip &clean(std::size_t i) const { return clean_.at(i); }
  const audio::AudioClip &noise(std::size_t i) const { return noise_.at(i); }

 private:
  SourceInventory inventory_;
  int sample_rate_hz_ = audio::kCanonicalSampleRate;
  std::vector<audio::AudioClip> clean_;
  std::vector<audio::AudioClip> noise_;
};

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_INVENTORY_H_
