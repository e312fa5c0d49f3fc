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

#ifndef SNSD_ENHANCE_WIENER_H_
#define SNSD_ENHANCE_WIENER_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "snsd/audio/audio_clip.h"
#include "snsd/enhance/noise_tracker.h"
#include "snsd/enhance/stft.h"

namespace snsd::enhance {

inline constexpr double kMinEnhanceSeconds = 0.5;

// Called once per frame, in order, with the noisy spectrum; fills one real
// gain per bin.
using FrameGainFn =
    std::function<void(std::size_t frame, const Spectrum &x, std::span<double> gains)>;

// Pads the clip so every input sample sits under two full analysis frames,
// runs STFT -> gains -> ISTFT with the noisy phase, and trims back to the
// input length.
audio::AudioClip ApplySpectralGains(const audio::AudioClip &clip, const StftConfig &config,
                                    const FrameGainFn &gain_fn);

// Per-frame record of what the enhancer decided.
struct EnhanceTrace {
  std::vector<double> frame_energy_db;
  std::vector<bool> noise_only;
  std::vector<std::vector<double>> gains;
};

// Wiener noise suppressor: energy VAD, recursive noise PSD tracking in
// noise-only frames, spectral-subtraction speech PSD, floored Wiener gain.
// Frames the VAD marks noise-only carry no speech estimate and get the
// floor gain. The clip must match config.sample_rate_hz and last at least
// 0.5 s.
audio::AudioClip Enhance(const audio::AudioClip &clip, const WienerParams &params = {},
                         const StftConfig &config = {}, EnhanceTrace *trace = nullptr);

}  // namespace snsd::enhance

#endif  // SNSD_ENHANCE_WIENER_H_
