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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "snsd/audio/level.h"
#include "snsd/common/error.h"
#include "snsd/enhance/fft.h"
#include "snsd/enhance/noise_tracker.h"
#include "snsd/enhance/stft.h"
#include "snsd/enhance/wiener.h"
#include "snsd/metrics/snr.h"
#include "support/test_support.h"

namespace snsd::enhance {
namespace {

using audio::AudioClip;

TEST(RealFft, MatchesNaiveDft) {
  for (std::size_t n : {8u, 64u, 320u, 512u}) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto &v : x) v = g(rng);
    RealFft fft(n);
    std::vector<std::complex<double>> y(fft.num_bins());
    fft.Forward(x, y);
    const auto ref = testing::NaiveRealDft(x);
    for (std::size_t k = 0; k < y.size(); ++k) ASSERT_LT(std::abs(y[k] - ref[k]), 1e-9 * n) << n << " " << k;
    std::vector<double> back(n);
    fft.Inverse(y, back);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(back[i], x[i], 1e-12);
  }
}

TEST(RealFft, OddSizeRejected) { EXPECT_THROW(RealFft(7), InvalidArgumentError); }

TEST(RealFft, MovedFromIsReusable) {
  RealFft a(16);
  RealFft b(std::move(a));
  a = RealFft(32);
  std::vector<double> x(32, 1.0);
  std::vector<std::complex<double>> y(17);
  a.Forward(x, y);
  EXPECT_NEAR(y[0].real(), 32.0, 1e-12);
}

TEST(Stft, Geometry) {
  StftConfig cfg;
  EXPECT_EQ(cfg.FrameLength(), 320u);
  EXPECT_EQ(cfg.Hop(), 160u);
  EXPECT_EQ(cfg.NumBins(), 257u);
  EXPECT_EQ(FrameCount(319, cfg), 0u);
  EXPECT_EQ(FrameCount(320, cfg), 1u);
  EXPECT_EQ(FrameCount(16000, cfg), (16000u - 320u) / 160u + 1u);
  StftConfig bad;
  bad.frame_ms = 20.03;
  EXPECT_THROW(bad.Validate(), InvalidArgumentError);
  bad = cfg;
  bad.overlap_fraction = 1.0;
  EXPECT_THROW(bad.Validate(), InvalidArgumentError);
}

TEST(Stft, HannSumsToOneAtHalfOverlap) {
  const auto w = HannWindow(320);
  for (std::size_t i = 0; i < 160; ++i) EXPECT_NEAR(w[i] + w[i + 160], 1.0, 1e-15);
}

TEST(Stft, ZeroClipZeroSpectra) {
  const auto spectra = Stft(AudioClip(std::vector<double>(1600, 0.0), 16000), {});
  EXPECT_EQ(spectra.size(), FrameCount(1600, {}));
  for (const auto &s : spectra)
    for (const auto &b : s) EXPECT_EQ(std::abs(b), 0.0);
  const AudioClip back = Istft(spectra, {}, 1600);
  for (double v : back.samples) EXPECT_EQ(v, 0.0);
}

TEST(Stft, BinCenteredSineConcentrates) {
  // Bin 32 of a 512-point transform: 1000 Hz at 16 kHz.
  AudioClip c;
  for (int i = 0; i < 3200; ++i) c.samples.push_back(std::sin(2 * std::numbers::pi * 1000.0 * i / 16000.0));
  const auto spectra = Stft(c, {});
  for (const auto &s : spectra) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (std::abs(s[k]) > std::abs(s[best])) best = k;
    EXPECT_EQ(best, 32u);
    EXPECT_EQ(s[0].imag(), 0.0);
    EXPECT_EQ(s.back().imag(), 0.0);
  }
}

TEST(Stft, RoundTripInterior) {
  const AudioClip x = testing::SyntheticSpeech(1.0, 16000, 3);
  const AudioClip y = Istft(Stft(x, {}), {}, x.size());
  const std::size_t edge = 160;
  std::span<const double> a(x.samples.data() + edge, x.size() - 2 * edge - 320);
  std::span<const double> b(y.samples.data() + edge, x.size() - 2 * edge - 320);
  EXPECT_LE(testing::RelativeL2(a, b), 1e-6);
}

TEST(Stft, InconsistentSpectraRejected) {
  std::vector<Spectrum> s(3, Spectrum(100));
  EXPECT_THROW(Istft(s, {}, 800), InvalidArgumentError);
}

TEST(ApplySpectralGains, UnitGainIsIdentityEverywhere) {
  const AudioClip x = testing::SyntheticSpeech(0.7, 16000, 4);
  const AudioClip y = ApplySpectralGains(x, {}, [](std::size_t, const Spectrum &, std::span<double> g) {
    std::fill(g.begin(), g.end(), 1.0);
  });
  ASSERT_EQ(y.size(), x.size());
  EXPECT_LE(testing::RelativeL2(x.view(), y.view()), 1e-6);
}

TEST(ApplySpectralGains, ConstantGainScales) {
  const AudioClip x = testing::WhiteNoise(8000, 16000, 2);
  const AudioClip y = ApplySpectralGains(x, {}, [](std::size_t, const Spectrum &, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.25);
  });
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(y.samples[i], 0.25 * x.samples[i], 1e-12);
}

TEST(WienerGainLaw, SymmetricAndLimits) {
  EXPECT_DOUBLE_EQ(WienerGainUnfloored(2.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(WienerGainUnfloored(3.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(WienerGainUnfloored(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(WienerGainUnfloored(0.0, 1.0), 0.0);
}

TEST(WienerGainLaw, FloorAppliesWhenPowerBelowNoise) {
  WienerParams p;
  NoiseTracker t(3);
  t.SetNoisePsd({1.0, 1.0, 0.0});
  Spectrum x = {{0.5, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  std::vector<double> g(3);
  WienerGain(x, t, p, g);
  EXPECT_DOUBLE_EQ(g[0], p.gain_floor);
  EXPECT_DOUBLE_EQ(g[1], p.gain_floor);
  EXPECT_DOUBLE_EQ(g[2], p.gain_floor);
  EXPECT_EQ(t.speech_psd_estimate()[0], 0.0);
}

TEST(WienerGainLaw, SpectralSubtractionEstimate) {
  WienerParams p;
  NoiseTracker t(1);
  t.SetNoisePsd({1.0});
  Spectrum x = {{2.0, 0.0}};  // |X|^2 = 4, Ps = 3
  std::vector<double> g(1);
  WienerGain(x, t, p, g);
  EXPECT_DOUBLE_EQ(t.speech_psd_estimate()[0], 3.0);
  EXPECT_DOUBLE_EQ(g[0], 0.75);
}

TEST(NoiseTracker, OneSmoothingStep) {
  WienerParams p;
  NoiseTracker t(1);
  t.SetNoisePsd({0.0});
  t.UpdateNoisePsd({{1.0, 0.0}}, true, p);
  EXPECT_NEAR(t.noise_psd()[0], 0.1, 1e-15);
  t.UpdateNoisePsd({{5.0, 0.0}}, false, p);
  EXPECT_NEAR(t.noise_psd()[0], 0.1, 1e-15);
}

TEST(NoiseTracker, ConvergesOnConstantPsd) {
  WienerParams p;
  NoiseTracker t(4);
  t.SetNoisePsd(std::vector<double>(4, 0.0));
  const Spectrum x(4, {3.0, 0.0});
  for (int i = 0; i < 50; ++i) t.UpdateNoisePsd(x, true, p);
  for (double v : t.noise_psd()) EXPECT_NEAR(v, 9.0, 0.05 * 9.0);
}

TEST(NoiseTracker, BootstrapAndThreshold) {
  WienerParams p;
  NoiseTracker t(1);
  for (int i = 0; i < p.init_noise_frames; ++i) EXPECT_TRUE(t.ClassifyFrame(-40.0 + 50.0 * (i % 2), p));
  EXPECT_TRUE(t.ClassifyFrame(-39.0, p));
  EXPECT_FALSE(t.ClassifyFrame(-40.0 + 30.0, p));
}

TEST(NoiseTracker, FloorSnapsDownRisesSlowly) {
  WienerParams p;
  NoiseTracker t(1);
  for (int i = 0; i < p.init_noise_frames; ++i) t.ClassifyFrame(-30.0, p);
  t.ClassifyFrame(-50.0, p);
  EXPECT_NEAR(t.noise_floor_db(), -50.0, 1e-12);
  t.ClassifyFrame(-10.0, p);
  EXPECT_NEAR(t.noise_floor_db(), -50.0 + p.floor_rise * 40.0, 1e-12);
}

TEST(Vad, StationaryNoiseMostlyNoiseOnly) {
  EnhanceTrace trace;
  Enhance(testing::WhiteNoise(32000, 16000, 8), {}, {}, &trace);
  std::size_t noise = 0;
  for (bool b : trace.noise_only) noise += b;
  EXPECT_GE(static_cast<double>(noise), 0.9 * static_cast<double>(trace.noise_only.size()));
}

TEST(Enhance, GainsWithinBounds) {
  WienerParams p;
  EnhanceTrace trace;
  AudioClip x = testing::SyntheticSpeech(2.0, 16000, 1);
  const AudioClip n = testing::WhiteNoise(x.size(), 16000, 2, 0.02);
  for (std::size_t i = 0; i < x.size(); ++i) x.samples[i] += n.samples[i];
  const AudioClip y = Enhance(x, p, {}, &trace);
  ASSERT_EQ(y.size(), x.size());
  for (const auto &frame : trace.gains)
    for (double g : frame) {
      ASSERT_GE(g, p.gain_floor);
      ASSERT_LE(g, 1.0);
    }
  EXPECT_LE(audio::SumOfSquares(y.view()), audio::SumOfSquares(x.view()));
}

TEST(Enhance, WhiteNoiseAttenuatedToFloor) {
  WienerParams p;
  const AudioClip x = testing::WhiteNoise(48000, 16000, 12, 0.05);
  const AudioClip y = Enhance(x, p);
  EXPECT_LE(audio::SumOfSquares(y.view()), 1.05 * p.gain_floor * p.gain_floor * audio::SumOfSquares(x.view()));
}

TEST(Enhance, CleanInputBarelyChanged) {
  const AudioClip x = testing::SyntheticSpeech(3.0, 16000, 21);
  const AudioClip y = Enhance(x);
  EXPECT_LE(testing::RelativeL2(x.view(), y.view()), 0.05);
}

TEST(Enhance, ImprovesSnrOnWhiteNoise) {
  const AudioClip clean = audio::NormalizeToDbfs(testing::SyntheticSpeech(4.0, 16000, 31), audio::LevelDbfs(-25)).clip;
  AudioClip noise = testing::WhiteNoise(clean.size(), 16000, 32);
  const double g = audio::Rms(clean.view()) / (audio::Rms(noise.view()) * std::pow(10.0, 5.0 / 20.0));
  AudioClip noisy = clean;
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy.samples[i] += g * noise.samples[i];
  const double before = metrics::GlobalSnrDb(clean, noisy);
  const double after = metrics::GlobalSnrDb(clean, Enhance(noisy));
  EXPECT_NEAR(before, 5.0, 1e-9);
  EXPECT_GE(after, before + 3.0);
}

TEST(Enhance, DeterministicAndRejectsShortOrWrongRate) {
  const AudioClip x = testing::SyntheticSpeech(1.0, 16000, 5);
  EXPECT_EQ(Enhance(x), Enhance(x));
  EXPECT_THROW(Enhance(testing::WhiteNoise(7999, 16000, 1)), InvalidArgumentError);
  EXPECT_THROW(Enhance(testing::WhiteNoise(8000, 8000, 1)), SampleRateMismatchError);
}

TEST(WienerParams, Validation) {
  WienerParams p;
  EXPECT_NO_THROW(p.Validate());
  auto bad = p;
  bad.gain_floor = 1.0;
  EXPECT_THROW(bad.Validate(), InvalidArgumentError);
  bad = p;
  bad.lambda_noise = 1.0;
  EXPECT_THROW(bad.Validate(), InvalidArgumentError);
  bad = p;
  bad.vad_margin_db = -1;
  EXPECT_THROW(bad.Validate(), InvalidArgumentError);
}

}  // namespace
}  // namespace snsd::enhance
