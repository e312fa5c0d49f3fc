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

#ifndef SNSD_SYNTH_MIXER_H_
#define SNSD_SYNTH_MIXER_H_

#include "snsd/audio/audio_clip.h"

namespace snsd::synth {

struct MixOptions {
  double target_level_dbfs = -25.0;
  // No written sample may exceed this magnitude.
  double peak_limit = 0.99;
};

struct Mixture {
  audio::AudioClip noisy;
  audio::AudioClip clean;
  audio::AudioClip noise;
  double noise_gain = 1.0;     // applied to the noise before the peak rescale
  double post_mix_gain = 1.0;  // common factor applied to all three signals
};

// Normalizes `speech` to the target level, scales `noise` so that the RMS
// ratio equals `snr_db`, and sums. If any of the three signals then peaks
// above the limit, all three are scaled by the same factor, which leaves the
// SNR and the sum relation untouched. On return noisy == clean + noise
// sample for sample.
Mixture MixAtSnr(const audio::AudioClip &speech, const audio::AudioClip &noise,
                 double snr_db, const MixOptions &options = {});

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_MIXER_H_
