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

#include "snsd/enhance/stft.h"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/enhance/fft.h"

namespace snsd::enhance {

namespace {

// Below this summed window weight a sample counts as uncovered.
constexpr double kMinWindowSum = 1e-6;

std::size_t ExactIntegral(double value, const char *what) {
  const double rounded = std::round(value);
  if (!(rounded > 0.0) || std::abs(value - rounded) > 1e-9)
    throw InvalidArgumentError(
        fmt::format("STFT {} must be a positive whole number of samples (got {})", what,
                    value));
  return static_cast<std::size_t>(rounded);
}

}  // namespace

std::size_t StftConfig::FrameLength() const {
  return ExactIntegral(frame_ms * sample_rate_hz / 1000.0, "frame length");
}

std::size_t StftConfig::Hop() const {
  return ExactIntegral(static_cast<double>(FrameLength()) * (1.0 - overlap_fraction), "hop");
}

void StftConfig::Validate() const {
  if (sample_rate_hz <= 0) throw InvalidArgumentError("STFT sample rate must be positive");
  if (!(overlap_fraction > 0.0 && overlap_fraction < 1.0))
    throw InvalidArgumentError("STFT overlap must lie in (0, 1)");
  const std::size_t frame = FrameLength();
  Hop();
  if (fft_size < frame || fft_size % 2 != 0)
    throw InvalidArgumentError(
        fmt::format("FFT size {} must be even and at least the frame length {}", fft_size,
                    frame));
}

std::vector<double> HannWindow(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                static_cast<double>(length));
  return w;
}

std::size_t FrameCount(std::size_t length, const StftConfig &config) {
  const std::size_t frame = config.FrameLength();
  if (length < frame) return 0;
  return (length - frame) / config.Hop() + 1;
}

std::vector<Spectrum> Stft(const audio::AudioClip &clip, const StftConfig &config) {
  config.Validate();
  if (clip.sample_rate_hz != config.sample_rate_hz)
    throw SampleRateMismatchError(fmt::format("STFT configured for {} Hz, clip is {} Hz",
                                              config.sample_rate_hz, clip.sample_rate_hz));
  const std::size_t frame = config.FrameLength();
  const std::size_t hop = config.Hop();
  const std::size_t count = FrameCount(clip.size(), config);
  if (count == 0)
    throw InvalidArgumentError(
        fmt::format("clip of {} samples is shorter than one {}-sample frame", clip.size(),
                    frame));

  const auto window = HannWindow(frame);
  RealFft fft(config.fft_size);
  std::vector<double> buffer(config.fft_size, 0.0);
  std::vector<Spectrum> out(count, Spectrum(config.NumBins()));
  for (std::size_t t = 0; t < count; ++t) {
    const double *x = clip.samples.data() + t * hop;
    for (std::size_t n = 0; n < frame; ++n) buffer[n] = x[n] * window[n];
    fft.Forward(buffer, out[t]);
  }
  return out;
}

audio::AudioClip Istft(const std::vector<Spectrum> &spectra, const StftConfig &config,
                       std::size_t length) {
  config.Validate();
  const std::size_t frame = config.FrameLength();
  const std::size_t hop = config.Hop();
  for (const auto &s : spectra)
    if (s.size() != config.NumBins())
      throw InvalidArgumentError(fmt::format("spectrum has {} bins, expected {}", s.size(),
                                             config.NumBins()));

  const auto window = HannWindow(frame);
  RealFft fft(config.fft_size);
  std::vector<double> frame_buf(config.fft_size);
  std::vector<double> acc(length, 0.0);
  std::vector<double> weight(length, 0.0);
  for (std::size_t t = 0; t < spectra.size(); ++t) {
    fft.Inverse(spectra[t], frame_buf);
    const std::size_t start = t * hop;
    for (std::size_t n = 0; n < frame && start + n < length; ++n) {
      acc[start + n] += frame_buf[n];
      weight[start + n] += window[n];
    }
  }
  audio::AudioClip out;
  out.sample_rate_hz = config.sample_rate_hz;
  out.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i)
    out.samples[i] = weight[i] > kMinWindowSum ? acc[i] / weight[i] : 0.0;
  return out;
}

}  // namespace snsd::enhance
