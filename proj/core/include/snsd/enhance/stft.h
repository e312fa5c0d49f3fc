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

#ifndef SNSD_ENHANCE_STFT_H_
#define SNSD_ENHANCE_STFT_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "snsd/audio/audio_clip.h"

namespace snsd::enhance {

// One analysis frame: fft_size/2 + 1 complex bins.
using Spectrum = std::vector<std::complex<double>>;

struct StftConfig {
  int sample_rate_hz = audio::kCanonicalSampleRate;
  double frame_ms = 20.0;
  double overlap_fraction = 0.5;
  // Frames are zero-padded up to this size before the transform.
  std::size_t fft_size = 512;

  std::size_t FrameLength() const;
  std::size_t Hop() const;
  std::size_t NumBins() const { return fft_size / 2 + 1; }
  // Throws InvalidArgumentError unless the frame is a whole number of
  // samples no larger than fft_size, the hop is integral, and the overlap
  // lies in (0, 1).
  void Validate() const;
};

// Periodic Hann window; at 50% overlap its shifted copies sum to exactly 1.
std::vector<double> HannWindow(std::size_t length);

// floor((length - frame) / hop) + 1, or 0 when length < frame.
std::size_t FrameCount(std::size_t length, const StftConfig &config);

// Hann-windowed frames at hop spacing. Throws if the clip is shorter than
// one frame or its rate differs from the config.
std::vector<Spectrum> Stft(const audio::AudioClip &clip, const StftConfig &config);

// Overlap-add of the inverse transforms, divided by the summed analysis
// window. Samples no frame covers are zero.
audio::AudioClip Istft(const std::vector<Spectrum> &spectra,
                       const StftConfig &config, std::size_t length);

}  // namespace snsd::enhance

#endif  // SNSD_ENHANCE_STFT_H_
