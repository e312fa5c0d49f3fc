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

#include "support/test_support.h"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "snsd/audio/wav_io.h"

namespace snsd::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "snsd-test-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

audio::AudioClip SyntheticSpeech(double seconds, int rate_hz, std::uint64_t seed, double f0_hz) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  const auto n = static_cast<std::size_t>(seconds * rate_hz);
  audio::AudioClip clip;
  clip.sample_rate_hz = rate_hz;
  clip.samples.assign(n, 0.0);
  const double fs = rate_hz;
  const double syllable_hz = 4.0 + jitter(rng);
  const double phase0 = std::numbers::pi * jitter(rng);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    // Slow pitch glide.
    const double f0 = f0_hz * (1.0 + 0.1 * std::sin(2.0 * std::numbers::pi * 0.7 * t + phase0));
    phase += 2.0 * std::numbers::pi * f0 / fs;
    double v = 0.0;
    for (int h = 1; h * f0 < 0.45 * fs && h <= 30; ++h) {
      // Rough formant humps near 500 Hz and 1500 Hz on a 1/h tilt.
      const double f = h * f0;
      const double formant = 1.0 + 2.0 * std::exp(-std::pow((f - 500.0) / 200.0, 2)) +
                             1.0 * std::exp(-std::pow((f - 1500.0) / 300.0, 2));
      v += formant / h * std::sin(h * phase);
    }
    // Syllables: raised-sine envelope, with every fourth one silent.
    const double s = syllable_hz * t;
    const double env = std::pow(std::max(0.0, std::sin(std::numbers::pi * s)), 2);
    const bool pause = static_cast<long>(std::floor(s)) % 4 == 3;
    clip.samples[i] = pause ? 0.0 : 0.1 * env * v;
  }
  return clip;
}

audio::AudioClip WhiteNoise(std::size_t n, int rate_hz, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  audio::AudioClip clip;
  clip.sample_rate_hz = rate_hz;
  clip.samples.resize(n);
  for (auto &s : clip.samples) s = g(rng);
  return clip;
}

audio::AudioClip NoiseOfKind(int kind, double seconds, int rate_hz, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(seconds * rate_hz);
  audio::AudioClip clip = WhiteNoise(n, rate_hz, seed * 31 + static_cast<std::uint64_t>(kind), 0.1);
  // One-pole low-pass with a kind-dependent pole, plus a kind-dependent hum.
  const double a = 0.9 * static_cast<double>(kind % 7) / 7.0;
  const double hum_hz = 50.0 * (1 + kind % 5);
  const double hum = kind >= 7 ? 0.05 : 0.0;
  double y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y = a * y + (1.0 - a) * clip.samples[i];
    clip.samples[i] =
        y + hum * std::sin(2.0 * std::numbers::pi * hum_hz * static_cast<double>(i) / rate_hz);
  }
  return clip;
}

void WriteFixtureCorpus(const fs::path &root, const FixtureLayout &l) {
  for (int s = 0; s < l.speakers; ++s) {
    const std::string spk = "spk" + std::to_string(s + 1);
    fs::create_directories(root / "clean" / spk);
    for (int k = 0; k < l.sentences; ++k) {
      const auto clip = SyntheticSpeech(l.sentence_s + 0.25 * k, l.rate_hz,
                                        static_cast<std::uint64_t>(100 * s + k + 1), 100.0 + 40.0 * s);
      audio::WriteWav(clip, root / "clean" / spk / (spk + "_" + std::to_string(k + 1) + ".wav"));
    }
  }
  for (int t = 0; t < l.noise_types; ++t) {
    const std::string type = "noise" + std::to_string(t + 1);
    fs::create_directories(root / "noise" / type);
    for (int k = 0; k < l.recordings_per_type; ++k) {
      const auto clip = NoiseOfKind(t, l.noise_s + 0.5 * k, l.rate_hz, static_cast<std::uint64_t>(k + 7));
      audio::WriteWav(clip, root / "noise" / type / (type + "_" + std::to_string(k + 1) + ".wav"));
    }
  }
}

std::vector<std::complex<double>> NaiveRealDft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n first so the angle stays small and exact.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

double RelativeL2(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size()) throw std::invalid_argument("length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    num += (estimate[i] - reference[i]) * (estimate[i] - reference[i]);
    den += reference[i] * reference[i];
  }
  return std::sqrt(num / den);
}

std::string ReadAll(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace snsd::testing
