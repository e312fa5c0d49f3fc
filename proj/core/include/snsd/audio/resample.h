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

#ifndef SNSD_AUDIO_RESAMPLE_H_
#define SNSD_AUDIO_RESAMPLE_H_

#include <cstddef>
#include <vector>

#include "snsd/audio/audio_clip.h"

namespace snsd::audio {

// Kaiser-windowed sinc low-pass. The transition band runs from
// `passband_fraction` of the lower Nyquist frequency up to that Nyquist
// frequency, where the stopband begins.
struct ResamplerOptions {
  double stopband_attenuation_db = 80.0;
  double passband_fraction = 0.9;
};

// Rational-ratio polyphase resampler. Stateless after construction and safe
// to share between threads.
class PolyphaseResampler {
 public:
  PolyphaseResampler(int source_hz, int target_hz, ResamplerOptions options = {});

  int source_hz() const { return source_hz_; }
  int target_hz() const { return target_hz_; }
  // Output length for an input of `n` samples: round(n * target / source).
  std::size_t OutputLength(std::size_t n) const;

  std::vector<double> Process(const std::vector<double> &input) const;

 private:
  double Kernel(double tau) const;
  void ComputePhase(std::size_t phase, double *taps) const;
  const double *Phase(std::size_t phase, std::vector<double> &scratch) const;

  int source_hz_;
  int target_hz_;
  long long up_ = 1;    // L
  long long down_ = 1;  // M
  int half_taps_ = 0;   // K: taps on each side of the centre, in input samples
  double cutoff_ = 0.5;  // cycles per input sample
  double beta_ = 0.0;
  double bessel_beta_ = 1.0;
  // up_ * 2K taps, each phase normalised to unit DC gain. Empty when the
  // ratio has too many phases to tabulate; then taps are computed per sample.
  std::vector<double> table_;
};

// Identity (bit-exact copy) when the rates already match.
AudioClip Resample(const AudioClip &clip, int target_hz);

}  // namespace snsd::audio

#endif  // SNSD_AUDIO_RESAMPLE_H_
