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

#ifndef SNSD_AUDIO_AUDIO_CLIP_H_
#define SNSD_AUDIO_AUDIO_CLIP_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace snsd::audio {

inline constexpr int kCanonicalSampleRate = 16000;

// Mono sample buffer. Samples are nominally in [-1, 1]; full scale is 1.0.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = kCanonicalSampleRate;

  AudioClip() = default;
  AudioClip(std::vector<double> s, int rate)
      : samples(std::move(s)), sample_rate_hz(rate) {}

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
  std::span<const double> view() const { return samples; }

  friend bool operator==(const AudioClip &, const AudioClip &) = default;
};

// Throws InvalidArgumentError / NonFiniteSampleError unless the clip has a
// positive rate, at least one sample and only finite samples.
void ValidateClip(const AudioClip &clip, std::string_view what);

bool AllFinite(std::span<const double> samples);
double PeakAbs(std::span<const double> samples);

// Sample-exact concatenation. All clips must share one rate.
AudioClip Concatenate(std::span<const AudioClip> clips);

// Copies [begin, begin + count); the range must lie inside the clip.
AudioClip Slice(const AudioClip &clip, std::size_t begin, std::size_t count);

AudioClip Scaled(const AudioClip &clip, double gain);

}  // namespace snsd::audio

#endif  // SNSD_AUDIO_AUDIO_CLIP_H_
