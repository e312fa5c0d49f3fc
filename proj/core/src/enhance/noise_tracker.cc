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

#include "snsd/enhance/noise_tracker.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::enhance {

namespace {

constexpr double kSilentFrameDb = -120.0;

}  // namespace

void WienerParams::Validate() const {
  if (!(lambda_noise > 0.0 && lambda_noise < 1.0))
    throw InvalidArgumentError("lambda must lie in (0, 1)");
  if (!(gain_floor >= 0.0 && gain_floor < 1.0))
    throw InvalidArgumentError("gain floor must lie in [0, 1)");
  if (!std::isfinite(vad_margin_db) || vad_margin_db < 0.0)
    throw InvalidArgumentError("VAD margin must be a non-negative number of dB");
  if (init_noise_frames < 1)
    throw InvalidArgumentError("at least one bootstrap noise frame is required");
  if (!(floor_rise >= 0.0 && floor_rise < 1.0))
    throw InvalidArgumentError("VAD floor rise must lie in [0, 1)");
}

double FrameEnergyDb(const Spectrum &x) {
  if (x.empty()) return kSilentFrameDb;
  double power = 0.0;
  for (const auto &c : x) power += std::norm(c);
  power /= static_cast<double>(x.size());
  return std::max(kSilentFrameDb, 10.0 * std::log10(std::max(power, 1e-300)));
}

NoiseTracker::NoiseTracker(std::size_t num_bins)
    : noise_psd_(num_bins, 0.0), speech_psd_(num_bins, 0.0) {
  if (num_bins == 0) throw InvalidArgumentError("noise tracker needs at least one bin");
}

bool NoiseTracker::ClassifyFrame(double frame_energy_db, const WienerParams &params) {
  bool noise_only;
  if (frames_seen_ < params.init_noise_frames) {
    bootstrap_power_ += std::pow(10.0, frame_energy_db / 10.0);
    noise_floor_db_ = 10.0 * std::log10(bootstrap_power_ / (frames_seen_ + 1));
    noise_only = true;
  } else {
    noise_only = frame_energy_db < noise_floor_db_ + params.vad_margin_db;
    if (frame_energy_db < noise_floor_db_)
      noise_floor_db_ = frame_energy_db;
    else
      noise_floor_db_ += params.floor_rise * (frame_energy_db - noise_floor_db_);
  }
  ++frames_seen_;
  return noise_only;
}

void NoiseTracker::UpdateNoisePsd(const Spectrum &x, bool is_noise_only,
                                  const WienerParams &params) {
  if (x.size() != noise_psd_.size()) throw InvalidArgumentError("spectrum size mismatch");
  if (!is_noise_only) return;
  const double lambda = params.lambda_noise;
  for (std::size_t k = 0; k < x.size(); ++k)
    noise_psd_[k] = lambda * noise_psd_[k] + (1.0 - lambda) * std::norm(x[k]);
}

void NoiseTracker::AccumulateBootstrap(const Spectrum &x) {
  if (x.size() != noise_psd_.size()) throw InvalidArgumentError("spectrum size mismatch");
  const double n = static_cast<double>(std::max(frames_seen_, 1));
  for (std::size_t k = 0; k < x.size(); ++k)
    noise_psd_[k] += (std::norm(x[k]) - noise_psd_[k]) / n;
}

void NoiseTracker::SetNoisePsd(std::vector<double> psd) {
  if (psd.size() != noise_psd_.size()) throw InvalidArgumentError("PSD size mismatch");
  for (double p : psd)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InvalidArgumentError("noise PSD must be finite and non-negative");
  noise_psd_ = std::move(psd);
}

double WienerGainUnfloored(double speech_psd, double noise_psd) {
  const double denom = speech_psd + noise_psd;
  if (!(denom > 0.0)) return 0.0;
  return speech_psd / denom;
}

void WienerGain(const Spectrum &x, NoiseTracker &tracker, const WienerParams &params,
                std::span<double> gains) {
  const std::size_t bins = tracker.num_bins();
  if (x.size() != bins || gains.size() != bins)
    throw InvalidArgumentError("spectrum / gain size mismatch");
  const auto &pn = tracker.noise_psd();
  auto &ps = tracker.mutable_speech_psd();
  for (std::size_t k = 0; k < bins; ++k) {
    ps[k] = std::max(std::norm(x[k]) - pn[k], 0.0);
    const double h = WienerGainUnfloored(ps[k], pn[k]);
    gains[k] = std::clamp(h, params.gain_floor, 1.0);
  }
}

}  // namespace snsd::enhance
