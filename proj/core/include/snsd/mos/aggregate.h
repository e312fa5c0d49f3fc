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

#ifndef SNSD_MOS_AGGREGATE_H_
#define SNSD_MOS_AGGREGATE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snsd/mos/events.h"
#include "snsd/mos/study.h"

namespace snsd::mos {

struct RatingRecord {
  std::uint64_t rating_id = 0;
  std::string judge_id;
  std::string clip_id;
  int score = 0;
  TimestampMs submitted_at = 0;
  // Set when the judge is later blocked; excluded ratings never count.
  bool excluded = false;
};

struct ClipMos {
  std::string clip_id;
  std::string condition;
  std::string noise_type;
  double mos = 0.0;
  std::size_t n = 0;
  bool below_target = false;
};

struct ConditionMos {
  std::string condition;
  double mos = 0.0;          // mean of per-clip MOS
  double ci95 = 0.0;         // 1.96 * sd(per-clip MOS) / sqrt(clips)
  bool ci_defined = false;   // false with fewer than two clips
  std::size_t clips = 0;
  std::size_t ratings = 0;
};

inline constexpr double kHistogramLow = 1.0;
inline constexpr double kHistogramBinWidth = 0.25;
inline constexpr std::size_t kHistogramBins = 16;

// Per-clip MOS distribution; bin i covers [1 + 0.25 i, 1 + 0.25 (i+1)),
// the last bin also includes 5.0.
struct ConditionHistogram {
  std::string condition;
  std::array<std::size_t, kHistogramBins> counts{};
};

struct NoiseTypeMos {
  std::string condition;
  std::string noise_type;
  double mos = 0.0;
  std::size_t clips = 0;
};

struct AnchorFit {
  double a = 1.0;
  double b = 0.0;
  bool offset_only = false;
};

struct NormalizedCondition {
  std::string condition;
  double mos = 0.0;
  double normalized_mos = 0.0;
};

struct MosReport {
  std::vector<ClipMos> clips;              // clips with ratings, by clip_id
  std::vector<std::string> unrated_clips;  // clips with no included rating
  std::vector<ConditionMos> conditions;    // by condition name
  std::vector<ConditionHistogram> histograms;
  std::vector<NoiseTypeMos> noise_types;   // by (condition, noise_type)
  std::optional<AnchorFit> anchor_fit;
  std::vector<NormalizedCondition> normalized;
};

// Pure function of the study and the non-excluded ratings. Ratings for ids
// outside the rated set are ignored. Throws InputDataError if no included
// rating exists.
MosReport AggregateMos(const Study &study, std::span<const RatingRecord> ratings);

std::size_t HistogramBin(double mos);

}  // namespace snsd::mos

#endif  // SNSD_MOS_AGGREGATE_H_
