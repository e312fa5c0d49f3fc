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

#include "snsd/metrics/snr.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snsd/audio/level.h"
#include "snsd/common/error.h"

namespace snsd::metrics {

double GlobalSnrDb(const audio::AudioClip &reference, const audio::AudioClip &degraded) {
  if (reference.size() != degraded.size())
    throw InvalidArgumentError(fmt::format("SNR: length mismatch ({} vs {})",
                                           reference.size(), degraded.size()));
  if (reference.sample_rate_hz != degraded.sample_rate_hz)
    throw SampleRateMismatchError("SNR: reference and degraded rates differ");
  const double signal = audio::SumOfSquares(reference.samples);
  if (!(signal > 0.0)) throw SilentClipError("SNR reference is silent");
  double error = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = degraded.samples[i] - reference.samples[i];
    error += d * d;
  }
  if (!std::isfinite(error)) throw NonFiniteSampleError("SNR degraded signal");
  if (error == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(signal / error));
}

}  // namespace snsd::metrics
