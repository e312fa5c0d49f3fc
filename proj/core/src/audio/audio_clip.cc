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

#include "snsd/audio/audio_clip.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::audio {

bool AllFinite(std::span<const double> samples) {
  return std::all_of(samples.begin(), samples.end(),
                     [](double x) { return std::isfinite(x); });
}

double PeakAbs(std::span<const double> samples) {
  double peak = 0.0;
  for (double x : samples) peak = std::max(peak, std::abs(x));
  return peak;
}

void ValidateClip(const AudioClip &clip, std::string_view what) {
  if (clip.sample_rate_hz <= 0)
    throw InvalidArgumentError(
        fmt::format("{}: sample rate must be positive", what));
  if (clip.empty())
    throw InvalidArgumentError(fmt::format("{}: clip is empty", what));
  if (!AllFinite(clip.samples)) throw NonFiniteSampleError(std::string(what));
}

AudioClip Concatenate(std::span<const AudioClip> clips) {
  if (clips.empty())
    throw InvalidArgumentError("concatenate: no clips given");
  const int rate = clips.front().sample_rate_hz;
  std::size_t total = 0;
  for (const auto &c : clips) {
    if (c.sample_rate_hz != rate)
      throw SampleRateMismatchError(
          fmt::format("concatenate: {} Hz vs {} Hz", rate, c.sample_rate_hz));
    total += c.size();
  }
  AudioClip out;
  out.sample_rate_hz = rate;
  out.samples.reserve(total);
  for (const auto &c : clips)
    out.samples.insert(out.samples.end(), c.samples.begin(), c.samples.end());
  return out;
}

AudioClip Slice(const AudioClip &clip, std::size_t begin, std::size_t count) {
  if (begin > clip.size() || count > clip.size() - begin)
    throw InvalidArgumentError(
        fmt::format("slice [{}, +{}) outside clip of {} samples", begin, count,
                    clip.size()));
  auto first = clip.samples.begin() + static_cast<std::ptrdiff_t>(begin);
  return AudioClip({first, first + static_cast<std::ptrdiff_t>(count)},
                   clip.sample_rate_hz);
}

AudioClip Scaled(const AudioClip &clip, double gain) {
  AudioClip out = clip;
  for (double &x : out.samples) x *= gain;
  return out;
}

}  // namespace snsd::audio
