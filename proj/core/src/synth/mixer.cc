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

#include "snsd/synth/mixer.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snsd/audio/level.h"
#include "snsd/common/error.h"

namespace snsd::synth {

Mixture MixAtSnr(const audio::AudioClip &speech, const audio::AudioClip &noise,
                 double snr_db, const MixOptions &options) {
  if (speech.size() != noise.size())
    throw InvalidArgumentError(fmt::format("mix: length mismatch ({} vs {})",
                                           speech.size(), noise.size()));
  if (speech.sample_rate_hz != noise.sample_rate_hz)
    throw SampleRateMismatchError("mix: speech and noise rates differ");
  if (!std::isfinite(snr_db)) throw InvalidArgumentError("mix: SNR must be finite");
  if (!(options.peak_limit > 0.0))
    throw InvalidArgumentError("mix: peak limit must be positive");
  if (!audio::AllFinite(speech.samples) || !audio::AllFinite(noise.samples))
    throw NonFiniteSampleError("mix input");

  const double noise_rms = audio::Rms(noise.samples);
  if (!(noise_rms > 0.0)) throw SilentClipError("noise segment is silent");
  audio::NormalizedClip clean =
      audio::NormalizeToDbfs(speech, audio::LevelDbfs(options.target_level_dbfs));
  const double clean_rms = audio::Rms(clean.clip.samples);

  Mixture mix;
  mix.noise_gain = clean_rms / (noise_rms * std::pow(10.0, snr_db / 20.0));
  mix.clean = std::move(clean.clip);
  mix.noise = audio::Scaled(noise, mix.noise_gain);

  double peak = std::max(audio::PeakAbs(mix.clean.samples), audio::PeakAbs(mix.noise.samples));
  for (std::size_t i = 0; i < mix.clean.size(); ++i)
    peak = std::max(peak, std::abs(mix.clean.samples[i] + mix.noise.samples[i]));
  if (peak > options.peak_limit) {
    mix.post_mix_gain = options.peak_limit / peak;
    for (double &x : mix.clean.samples) x *= mix.post_mix_gain;
    for (double &x : mix.noise.samples) x *= mix.post_mix_gain;
  }

  mix.noisy.sample_rate_hz = mix.clean.sample_rate_hz;
  mix.noisy.samples.resize(mix.clean.size());
  for (std::size_t i = 0; i < mix.clean.size(); ++i)
    mix.noisy.samples[i] = mix.clean.samples[i] + mix.noise.samples[i];

  if (!audio::AllFinite(mix.noisy.samples)) throw NonFiniteSampleError("mix result");
  return mix;
}

}  // namespace snsd::synth
