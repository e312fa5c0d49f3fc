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

#ifndef SNSD_ENHANCE_NOISE_TRACKER_H_
#define SNSD_ENHANCE_NOISE_TRACKER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "snsd/enhance/stft.h"

namespace snsd::enhance {

struct WienerParams {
  // Recursive smoothing of the noise PSD in noise-only frames.
  double lambda_noise = 0.9;
  // A frame is noise-only when its energy is below floor + margin.
  double vad_margin_db = 3.0;
  // Leading frames treated as noise-only unconditionally (about 100 ms).
  int init_noise_frames = 5;
  // Minimum amplitude gain, -25 dB.
  double gain_floor = 0.056234132519034911;
  // Per-frame fraction by which the VAD floor climbs toward louder frames;
  // it drops to quieter frames immediately.
  double floor_rise = 0.005;

  void Validate() const;
};

// Mean bin power of a frame in dB; silent frames read -120 dB.
double FrameEnergyDb(const Spectrum &x);

// Per-bin noise and speech PSD estimates plus the VAD's adaptive floor.
class NoiseTracker {
 public:
  explicit NoiseTracker(std::size_t num_bins);

  std::size_t num_bins() const { return noise_psd_.size(); }
  const std::vector<double> &noise_psd() const { return noise_psd_; }
  const std::vector<double> &speech_psd_estimate() const { return speech_psd_; }
  double noise_floor_db() const { return noise_floor_db_; }
  int frames_seen() const { return frames_seen_; }
  bool bootstrapping(const WienerParams &params) const {
    return frames_seen_ < params.init_noise_frames;
  }

  // Energy-threshold voice activity decision for the next frame. Returns
  // true (noise only) for the first init_noise_frames frames and whenever
  // the energy is below floor + margin. The floor starts at the mean power
  // of the bootstrap frames, then follows the minimum: it snaps down to
  // quieter frames and rises slowly otherwise.
  bool ClassifyFrame(double frame_energy_db, const WienerParams &params);

  // Pn(k) <- lambda * Pn(k) + (1 - lambda) * |X(k)|^2 in noise-only
  // frames; otherwise unchanged.
  void UpdateNoisePsd(const Spectrum &x, bool is_noise_only, const WienerParams &params);

  // During bootstrap Pn is the running mean of |X|^2 over the frames seen,
  // which avoids the slow start of recursive smoothing from zero. Call after
  // ClassifyFrame for that frame.
  void AccumulateBootstrap(const Spectrum &x);

  void SetNoisePsd(std::vector<double> psd);
  std::vector<double> &mutable_speech_psd() { return speech_psd_; }

 private:
  std::vector<double> noise_psd_;
  std::vector<double> speech_psd_;
  double noise_floor_db_ = 0.0;
  double bootstrap_power_ = 0.0;
  int frames_seen_ = 0;
};

// Wiener gain Ps / (Ps + Pn) without flooring; 0 when both are zero.
double WienerGainUnfloored(double speech_psd, double noise_psd);

// Per-bin Wiener gains for frame `x`. Ps(k) is max(|X(k)|^2 - Pn(k), 0)
// (stored in the tracker's speech PSD estimate), H = Ps / (Ps + Pn), then
// H = max(H, gain_floor). Writes num_bins gains.
void WienerGain(const Spectrum &x, NoiseTracker &tracker, const WienerParams &params,
                std::span<double> gains);

}  // namespace snsd::enhance

#endif  // SNSD_ENHANCE_NOISE_TRACKER_H_
