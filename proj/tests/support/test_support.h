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

#ifndef SNSD_TESTS_SUPPORT_TEST_SUPPORT_H_
#define SNSD_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "snsd/audio/audio_clip.h"

namespace snsd::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Voiced, syllable-modulated harmonic signal with pauses: energy rises and
// falls like running speech and the spectrum falls off with frequency.
audio::AudioClip SyntheticSpeech(double seconds, int rate_hz, std::uint64_t seed,
                                 double f0_hz = 120.0);

audio::AudioClip WhiteNoise(std::size_t n, int rate_hz, std::uint64_t seed, double sigma = 0.1);

// Distinct stationary or slowly varying noises for kind = 0, 1, 2, ...
audio::AudioClip NoiseOfKind(int kind, double seconds, int rate_hz, std::uint64_t seed);

// Writes clean/<spk>/<spk>_<k>.wav and noise/<type>/<type>_<k>.wav under
// `root`; returns nothing, the layout is fixed.
struct FixtureLayout {
  int speakers = 2;
  int sentences = 5;
  int noise_types = 14;
  int recordings_per_type = 1;
  double sentence_s = 2.0;
  double noise_s = 3.0;
  int rate_hz = 16000;
};
void WriteFixtureCorpus(const std::filesystem::path &root, const FixtureLayout &layout);

// O(n^2) DFT of a real sequence, bins 0..n/2.
std::vector<std::complex<double>> NaiveRealDft(std::span<const double> x);

double RelativeL2(std::span<const double> reference, std::span<const double> estimate);

std::string ReadAll(const std::filesystem::path &path);

}  // namespace snsd::testing

#endif  // SNSD_TESTS_SUPPORT_TEST_SUPPORT_H_
