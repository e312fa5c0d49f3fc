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

#include "snsd/synth/segment.h"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::synth {

std::size_t SecondsToSamples(double length_s, int rate) {
  if (!(length_s > 0.0) || rate <= 0)
    throw InvalidArgumentError("clip length and rate must be positive");
  return static_cast<std::size_t>(std::llround(length_s * rate));
}

audio::AudioClip AssembleCleanSegment(const SourceLibrary &library,
                                      std::string_view speaker_id,
                                      std::size_t length_samples, Rng &rng) {
  if (length_samples == 0) throw InvalidArgumentError("segment length must be positive");
  std::vector<std::size_t> pool = library.inventory().UtterancesOf(speaker_id);
  if (pool.empty())
    throw InvalidArgumentError(fmt::format("unknown speaker '{}'", speaker_id));

  // Fisher-Yates over the speaker's utterances.
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng.UniformIndex(i)]);

  audio::AudioClip out;
  out.sample_rate_hz = library.sample_rate_hz();
  out.samples.reserve(length_samples);
  std::size_t drawn = 0;
  while (out.size() < length_samples) {
    std::size_t idx = drawn < pool.size() ? pool[drawn] : pool[rng.UniformIndex(pool.size())];
    ++drawn;
    const auto &utt = library.clean(idx).samples;
    const std::size_t take = std::min(utt.size(), length_samples - out.size());
    out.samples.insert(out.samples.end(), utt.begin(),
                       utt.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

audio::AudioClip AssembleNoiseSegment(const SourceLibrary &library,
                                      std::string_view noise_type,
                                      std::size_t length_samples, Rng &rng) {
  if (length_samples == 0) throw InvalidArgumentError("segment length must be positive");
  const std::vector<std::size_t> pool = library.inventory().RecordingsOf(noise_type);
  if (pool.empty())
    throw InvalidArgumentError(fmt::format("unknown noise type '{}'", noise_type));
  const auto &rec = library.noise(pool[rng.UniformIndex(pool.size())]).samples;

  audio::AudioClip out;
  out.sample_rate_hz = library.sample_rate_hz();
  out.samples.resize(length_samples);
  if (rec.size() >= length_samples) {
    const std::size_t offset = rng.UniformIndex(rec.size() - length_samples + 1);
    std::copy_n(rec.begin() + static_cast<std::ptrdiff_t>(offset), length_samples,
                out.samples.begin());
  } else {
    const std::size_t offset = rng.UniformIndex(rec.size());
    for (std::size_t i = 0; i < length_samples; ++i)
      out.samples[i] = rec[(offset + i) % rec.size()];
  }
  return out;
}

}  // namespace snsd::synth
