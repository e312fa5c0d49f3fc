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

// Microbenchmarks for the per-sample hot paths: resampling, mixing,
// STFT analysis/synthesis and Wiener enhancement.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "snsd/audio/audio_clip.h"
#include "snsd/audio/resample.h"
#include "snsd/enhance/stft.h"
#include "snsd/enhance/wiener.h"
#include "snsd/synth/mixer.h"

namespace {

using snsd::audio::AudioClip;

AudioClip Tone(double seconds, int rate) {
  const auto n = static_cast<std::size_t>(seconds * rate);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    s[i] = 0.1 * std::sin(2 * std::numbers::pi * 220 * t) * (1.0 + std::sin(2 * std::numbers::pi * 3 * t));
  }
  return AudioClip(std::move(s), rate);
}

AudioClip Noise(std::size_t n, int rate, double sigma) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<double> s(n);
  for (auto &x : s) x = g(rng);
  return AudioClip(std::move(s), rate);
}

void BM_Resample48kTo16k(benchmark::State &state) {
  const AudioClip x = Tone(static_cast<double>(state.range(0)), 48000);
  for (auto _ : state) benchmark::DoNotOptimize(snsd::audio::Resample(x, 16000));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_Resample48kTo16k)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MixAtSnr(benchmark::State &state) {
  const AudioClip speech = Tone(static_cast<double>(state.range(0)), 16000);
  const AudioClip noise = Noise(speech.size(), 16000, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(snsd::synth::MixAtSnr(speech, noise, 5.0));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(speech.size()));
}
BENCHMARK(BM_MixAtSnr)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_StftRoundTrip(benchmark::State &state) {
  const AudioClip x = Tone(static_cast<double>(state.range(0)), 16000);
  const snsd::enhance::StftConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(snsd::enhance::Istft(snsd::enhance::Stft(x, config), config, x.size()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_StftRoundTrip)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_WienerEnhance(benchmark::State &state) {
  AudioClip x = Tone(static_cast<double>(state.range(0)), 16000);
  const AudioClip n = Noise(x.size(), 16000, 0.02);
  for (std::size_t i = 0; i < x.size(); ++i) x.samples[i] += n.samples[i];
  for (auto _ : state) benchmark::DoNotOptimize(snsd::enhance::Enhance(x));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_WienerEnhance)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
