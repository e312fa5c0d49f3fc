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

#include "snsd/audio/level.h"

#include <cmath>

#include "snsd/common/error.h"

namespace snsd::audio {

double SumOfSquares(std::span<const double> samples) {
  double acc = 0.0;
  for (double x : samples) acc += x * x;
  return acc;
}

double Rms(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  return std::sqrt(SumOfSquares(samples) / static_cast<double>(samples.size()));
}

LevelDbfs MeasureRmsDbfs(const AudioClip &clip) {
  if (clip.empty()) throw SilentClipError("clip has no samples");
  const double rms = Rms(clip.samples);
  if (!(rms > 0.0)) throw SilentClipError("all samples are zero");
  return LevelDbfs(20.0 * std::log10(rms));
}

NormalizedClip NormalizeToDbfs(const AudioClip &clip, LevelDbfs target) {
  const double rms = Rms(clip.samples);
  if (clip.empty() || !(rms > 0.0))
    throw SilentClipError("cannot normalize a silent clip");
  const double gain = DbToAmplitude(target.value) / rms;
  return {Scaled(clip, gain), gain};
}

}  // namespace snsd::audio
