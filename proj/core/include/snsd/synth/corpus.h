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

#ifndef SNSD_SYNTH_CORPUS_H_
#define SNSD_SYNTH_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "snsd/audio/audio_clip.h"
#include "snsd/synth/inventory.h"
#include "snsd/synth/manifest.h"
#include "snsd/synth/mixer.h"

namespace snsd::synth {

struct SynthesisConfig {
  std::size_t total_clips = 0;
  double clip_length_s = 10.0;
  std::vector<double> snr_levels_db = {0, 5, 10, 15, 20};
  int sample_rate_hz = audio::kCanonicalSampleRate;
  double target_level_dbfs = -25.0;
  std::uint64_t seed = 0;
  // Worker threads; the output does not depend on this.
  int workers = 1;
};

// Throws InvalidArgumentError on any violated precondition.
void ValidateConfig(const SynthesisConfig &config);

// What clip `index` will contain.
struct ClipPlan {
  std::size_t index = 0;
  std::size_t segment_index = 0;
  std::string speaker_id;
  std::string noise_type;
  double snr_db = 0.0;
};

// Each clean segment is mixed once with every (noise type, SNR) cell before
// the next segment starts, and successive segments rotate through the
// speakers. Any prefix of the plan is therefore balanced over the
// (speaker, noise type, SNR) cells to within one clip.
ClipPlan PlanClip(const SourceInventory &inventory, const SynthesisConfig &config,
                  std::size_t index);

// Conditions mixed into every clean segment: noise types x SNR levels.
std::size_t AugmentationFactor(const SourceInventory &inventory,
                               const SynthesisConfig &config);

// Clip count of a full sweep where every clean utterance yields one segment:
// speakers * sentences * noise types * SNR levels.
std::size_t FullSweepClipCount(const SourceInventory &inventory,
                               const SynthesisConfig &config);

std::string ClipId(std::size_t index);

struct SynthesizedClip {
  MixtureRecord record;
  Mixture mixture;
};

// Builds one clip in memory. Depends only on (library, config, index).
SynthesizedClip SynthesizeClip(const SourceLibrary &library,
                               const SynthesisConfig &config, std::size_t index);

// Writes noisy/, clean/, noise/ and manifest.tsv under `out_dir`. Output is
// staged next to `out_dir` and moved into place only when every clip has
// been written; on failure nothing is left behind and the thrown error
// reports how many clips had completed. `out_dir` must not exist or be empty.
std::vector<MixtureRecord> SynthesizeCorpus(const SourceLibrary &library,
                                            const SynthesisConfig &config,
                                            const std::filesystem::path &out_dir);

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_CORPUS_H_
