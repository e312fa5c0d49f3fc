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

#include "snsd/enhance/wiener.h"

#include <algorithm>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::enhance {

audio::AudioClip ApplySpectralGains(const audio::AudioClip &clip, const StftConfig &config,
                                    const FrameGainFn &gain_fn) {
  config.Validate();
  audio::ValidateClip(clip, "enhance input");
  if (clip.sample_rate_hz != config.sample_rate_hz)
    throw SampleRateMismatchError(fmt::format("enhancer runs at {} Hz, clip is {} Hz",
                                              config.sample_rate_hz, clip.sample_rate_hz));
  const std::size_t frame = config.FrameLength();
  const std::size_t hop = config.Hop();
  // Lead-in so the first sample is already covered by overlapping frames.
  const std::size_t front = frame - hop;
  const std::size_t covered_end = front + clip.size();
  const std::size_t frames = std::max<std::size_t>(1, (covered_end + hop - 1) / hop);
  const std::size_t padded_len = std::max(covered_end, (frames - 1) * hop + frame);

  audio::AudioClip padded;
  padded.sample_rate_hz = clip.sample_rate_hz;
  padded.samples.assign(padded_len, 0.0);
  std::copy(clip.samples.begin(), clip.samples.end(),
            padded.samples.begin() + static_cast<std::ptrdiff_t>(front));

  std::vector<Spectrum> spectra = Stft(padded, config);
  std::vector<double> gains(config.NumBins());
  for (std::size_t t = 0; t < spectra.size(); ++t) {
    std::fill(gains.begin(), gains.end(), 1.0);
    gain_fn(t, spectra[t], gains);
    for (std::size_t k = 0; k < gains.size(); ++k) spectra[t][k] *= gains[k];
  }
  audio::AudioClip out = Istft(spectra, config, padded_len);
  out.samples.erase(out.samples.begin(),
                    out.samples.begin() + static_cast<std::ptrdiff_t>(front));
  out.samples.resize(clip.size());
  return out;
}

audio::AudioClip Enhance(const audio::AudioClip &clip, const WienerParams &params,
                         const StftConfig &config, EnhanceTrace *trace) {
  params.Validate();
  config.Validate();
  audio::ValidateClip(clip, "enhance input");
  if (clip.duration_s() < kMinEnhanceSeconds)
    throw InvalidArgumentError(fmt::format("clip too short to enhance: {:.3f} s < {} s",
                                           clip.duration_s(), kMinEnhanceSeconds));

  NoiseTracker tracker(config.NumBins());
  if (trace) *trace = {};
  auto gain_fn = [&](std::size_t, const Spectrum &x, std::span<double> gains) {
    const double energy = FrameEnergyDb(x);
    const bool bootstrap = tracker.bootstrapping(params);
    const bool noise_only = tracker.ClassifyFrame(energy, params);
    if (bootstrap)
      tracker.AccumulateBootstrap(x);
    else
      tracker.UpdateNoisePsd(x, noise_only, params);

    if (noise_only) {
      std::fill(tracker.mutable_speech_psd().begin(), tracker.mutable_speech_psd().end(), 0.0);
      std::fill(gains.begin(), gains.end(), params.gain_floor);
    } else {
      WienerGain(x, tracker, params, gains);
    }
    if (trace) {
      trace->frame_energy_db.push_back(energy);
      trace->noise_only.push_back(noise_only);
      trace->gains.emplace_back(gains.begin(), gains.end());
    }
  };
  return ApplySpectralGains(clip, config, gain_fn);
}

}  // namespace snsd::enhance
