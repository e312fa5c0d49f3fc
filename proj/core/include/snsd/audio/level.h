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

#ifndef SNSD_AUDIO_LEVEL_H_
#define SNSD_AUDIO_LEVEL_H_

#include <cmath>
#include <span>

#include "snsd/audio/audio_clip.h"

namespace snsd::audio {

// RMS level relative to full scale 1.0: 20*log10(rms). A full-scale square
// wave reads 0 dBFS, a full-scale sine about -3.01 dBFS.
struct LevelDbfs {
  double value = 0.0;
  constexpr explicit LevelDbfs(double v) : value(v) {}
};

double Rms(std::span<const double> samples);
double SumOfSquares(std::span<const double> samples);

// Throws SilentClipError for empty or all-zero input.
LevelDbfs MeasureRmsDbfs(const AudioClip &clip);

struct NormalizedClip {
  AudioClip clip;
  double gain = 1.0;  // scalar that was applied
};

// Scales the clip so its RMS level equals `target`. Peaks are not limited.
NormalizedClip NormalizeToDbfs(const AudioClip &clip, LevelDbfs target);

inline double DbToAmplitude(double db) { return std::pow(10.0, db / 20.0); }

}  // namespace snsd::audio

#endif  // SNSD_AUDIO_LEVEL_H_
