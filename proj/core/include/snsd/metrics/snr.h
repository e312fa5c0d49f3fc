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

#ifndef SNSD_METRICS_SNR_H_
#define SNSD_METRICS_SNR_H_

#include "snsd/audio/audio_clip.h"

namespace snsd::metrics {

// Reported when the degraded signal equals the reference exactly.
inline constexpr double kSnrCapDb = 100.0;

// 10*log10(sum ref^2 / sum (degraded - ref)^2), capped at kSnrCapDb.
// Throws on length or rate mismatch and on a silent reference.
double GlobalSnrDb(const audio::AudioClip &reference, const audio::AudioClip &degraded);

}  // namespace snsd::metrics

#endif  // SNSD_METRICS_SNR_H_
