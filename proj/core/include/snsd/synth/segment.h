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

#ifndef SNSD_SYNTH_SEGMENT_H_
#define SNSD_SYNTH_SEGMENT_H_

#include <cstddef>
#include <string_view>

#include "snsd/audio/audio_clip.h"
#include "snsd/synth/inventory.h"
#include "snsd/synth/rng.h"

namespace snsd::synth {

// Number of samples for `length_s` seconds at `rate`, rounded to nearest.
std::size_t SecondsToSamples(double length_s, int rate);

// Concatenates utterances of one speaker until `length_samples` is reached,
// then trims. Utterances are drawn in a random order without replacement;
// once every utterance has been used, further draws are with replacement.
// Throws InvalidArgumentError for an unknown speaker.
audio::AudioClip AssembleCleanSegment(const SourceLibrary &library,
                                      std::string_view speaker_id,
                                      std::size_t length_samples, Rng &rng);

// A contiguous excerpt of one randomly chosen recording of `noise_type`,
// starting at a random offset. Recordings shorter than the request are
// looped end-to-start (no crossfade).
audio::AudioClip AssembleNoiseSegment(const SourceLibrary &library,
                                      std::string_view noise_type,
                                      std::size_t length_samples, Rng &rng);

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_SEGMENT_H_
