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

#ifndef SNSD_SYNTH_RNG_H_
#define SNSD_SYNTH_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace snsd::synth {

// Seeded generator whose output is identical on every platform: it only uses
// the raw mt19937_64 stream, never the implementation-defined std
// distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, stream, salt), e.g. one per clip.
  static Rng ForStream(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t salt = 0);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform integer in [0, n); n must be positive.
  std::size_t UniformIndex(std::size_t n);
  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();
  // Standard normal via Box-Muller.
  double Gaussian();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t &state);

}  // namespace snsd::synth

#endif  // SNSD_SYNTH_RNG_H_
