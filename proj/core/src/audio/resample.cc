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

#include "snsd/audio/resample.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::audio {

namespace {

constexpr long long kMaxTabulatedPhases = 4096;

double KaiserBeta(double attenuation_db) {
  if (attenuation_db > 50.0) return 0.1102 * (attenuation_db - 8.7);
  if (attenuation_db >= 21.0)
    return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) +
           0.07886 * (attenuation_db - 21.0);
  return 0.0;
}

}  // namespace

PolyphaseResampler::PolyphaseResampler(int source_hz, int target_hz,
                                       ResamplerOptions options)
    : source_hz_(source_hz), target_hz_(target_hz) {
  if (source_hz <= 0 || target_hz <= 0)
    throw InvalidArgumentError(
        fmt::format("resample: rates must be positive ({} -> {})", source_hz,
                    target_hz));
  if (!(options.passband_fraction > 0.0 && options.passband_fraction < 1.0))
    throw InvalidArgumentError("resample: passband_fraction must be in (0, 1)");
  const long long g = std::gcd(source_hz, target_hz);
  up_ = target_hz / g;
  down_ = source_hz / g;

  // Frequencies below are in cycles per input sample.
  const double scale = std::min(1.0, static_cast<double>(up_) / down_);
  const double nyquist = 0.5 * scale;
  const double transition = nyquist * (1.0 - options.passband_fraction);
  cutoff_ = nyquist - 0.5 * transition;
  beta_ = KaiserBeta(options.stopband_attenuation_db);
  bessel_beta_ = std::cyl_bessel_i(0.0, beta_);
  const double taps =
      (options.stopband_attenuation_db - 7.95) / (14.36 * transition);
  half_taps_ = std::max(2, static_cast<int>(std::ceil(taps / 2.0)));

  if (up_ <= kMaxTabulatedPhases) {
    const std::size_t width = 2 * static_cast<std::size_t>(half_taps_);
    table_.resize(static_cast<std::size_t>(up_) * width);
    for (long long phase = 0; phase < up_; ++phase)
      ComputePhase(static_cast<std::size_t>(phase),
                   table_.data() + static_cast<std::size_t>(phase) * width);
  }
}

double PolyphaseResampler::Kernel(double tau) const {
  const double k = static_cast<double>(half_taps_);
  if (std::abs(tau) >= k) return 0.0;
  const double x = 2.0 * cutoff_ * tau;
  const double sinc = x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
  const double r = tau / k;
  const double window = std::cyl_bessel_i(0.0, beta_ * std::sqrt(1.0 - r * r)) / bessel_beta_;
  return 2.0 * cutoff_ * sinc * window;
}

// Taps for output phase `phase`: entry m multiplies input sample
// i0 - K + 1 + m, where i0 = floor(n * M / L).
void PolyphaseResampler::ComputePhase(std::size_t phase, double *taps) const {
  const std::size_t width = 2 * static_cast<std::size_t>(half_taps_);
  const double frac = static_cast<double>(phase) / static_cast<double>(up_);
  double sum = 0.0;
  for (std::size_t m = 0; m < width; ++m) {
    const double tau = frac + static_cast<double>(half_taps_ - 1) - static_cast<double>(m);
    taps[m] = Kernel(tau);
    sum += taps[m];
  }
  for (std::size_t m = 0; m < width; ++m) taps[m] /= sum;
}

const double *PolyphaseResampler::Phase(std::size_t phase,
                                        std::vector<double> &scratch) const {
  const std::size_t width = 2 * static_cast<std::size_t>(half_taps_);
  if (!table_.empty()) return table_.data() + phase * width;
  scratch.resize(width);
  ComputePhase(phase, scratch.data());
  return scratch.data();
}

std::size_t PolyphaseResampler::OutputLength(std::size_t n) const {
  const auto nn = static_cast<unsigned long long>(n);
  return static_cast<std::size_t>((nn * static_cast<unsigned long long>(up_) +
                                   static_cast<unsigned long long>(down_) / 2) /
                                  static_cast<unsigned long long>(down_));
}

std::vector<double> PolyphaseResampler::Process(const std::vector<double> &input) const {
  if (up_ == 1 && down_ == 1) return input;
  const std::size_t out_len = OutputLength(input.size());
  std::vector<double> out(out_len);
  std::vector<double> scratch;
  const long long n_in = static_cast<long long>(input.size());
  const std::size_t width = 2 * static_cast<std::size_t>(half_taps_);
  for (std::size_t n = 0; n < out_len; ++n) {
    const long long pos = static_cast<long long>(n) * down_;
    const long long i0 = pos / up_;
    const auto phase = static_cast<std::size_t>(pos % up_);
    const double *taps = Phase(phase, scratch);
    const long long first = i0 - half_taps_ + 1;
    const std::size_t m_begin = first < 0 ? static_cast<std::size_t>(-first) : 0;
    std::size_t m_end = width;
    if (first + static_cast<long long>(width) > n_in)
      m_end = static_cast<std::size_t>(std::max(0LL, n_in - first));
    double acc = 0.0;
    for (std::size_t m = m_begin; m < m_end; ++m)
      acc += taps[m] * input[static_cast<std::size_t>(first + static_cast<long long>(m))];
    out[n] = acc;
  }
  return out;
}

AudioClip Resample(const AudioClip &clip, int target_hz) {
  if (target_hz <= 0)
    throw InvalidArgumentError("resample: target rate must be positive");
  if (clip.sample_rate_hz == target_hz) return clip;
  PolyphaseResampler resampler(clip.sample_rate_hz, target_hz);
  return AudioClip(resampler.Process(clip.samples), target_hz);
}

}  // namespace snsd::audio
