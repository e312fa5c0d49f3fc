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

#include "snsd/mos/aggregate.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "snsd/common/error.h"

namespace snsd::mos {

std::size_t HistogramBin(double mos) {
  const double idx = std::floor((mos - kHistogramLow) / kHistogramBinWidth);
  return static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(kHistogramBins - 1)));
}

MosReport AggregateMos(const Study &study, std::span<const RatingRecord> ratings) {
  std::map<std::string, const StudyClip *> by_id;
  for (const auto &c : study.clips) by_id.emplace(c.clip_id, &c);

  // clip_id -> (sum, count), in integer arithmetic so order cannot matter.
  std::map<std::string, std::pair<long long, std::size_t>> sums;
  for (const auto &r : ratings) {
    if (r.excluded || !by_id.count(r.clip_id)) continue;
    auto &[sum, n] = sums[r.clip_id];
    sum += r.score;
    ++n;
  }
  if (sums.empty()) throw InputDataError("study has no included ratings");

  MosReport report;
  const auto target = static_cast<std::size_t>(study.config.ratings_per_clip_target);
  for (const auto &[id, clip] : by_id) {
    auto it = sums.find(id);
    if (it == sums.end()) {
      report.unrated_clips.push_back(id);
      continue;
    }
    const auto [sum, n] = it->second;
    report.clips.push_back({id, clip->condition, clip->noise_type,
                            static_cast<double>(sum) / static_cast<double>(n), n, n < target});
  }

  std::map<std::string, std::vector<const ClipMos *>> per_condition;
  std::map<std::pair<std::string, std::string>, std::vector<double>> per_noise;
  for (const auto &c : report.clips) {
    per_condition[c.condition].push_back(&c);
    per_noise[{c.condition, c.noise_type}].push_back(c.mos);
  }
  for (const auto &[condition, clips] : per_condition) {
    ConditionMos cm;
    cm.condition = condition;
    cm.clips = clips.size();
    double sum = 0.0;
    for (const auto *c : clips) {
      sum += c->mos;
      cm.ratings += c->n;
    }
    cm.mos = sum / static_cast<double>(clips.size());
    if (clips.size() >= 2) {
      double ss = 0.0;
      for (const auto *c : clips) ss += (c->mos - cm.mos) * (c->mos - cm.mos);
      const double sd = std::sqrt(ss / static_cast<double>(clips.size() - 1));
      cm.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(clips.size()));
      cm.ci_defined = true;
    }
    report.conditions.push_back(cm);

    ConditionHistogram h;
    h.condition = condition;
    for (const auto *c : clips) ++h.counts[HistogramBin(c->mos)];
    report.histograms.push_back(h);
  }
  for (const auto &[key, values] : per_noise) {
    double sum = 0.0;
    for (double v : values) sum += v;
    report.noise_types.push_back(
        {key.first, key.second, sum / static_cast<double>(values.size()), values.size()});
  }
  return report;
}

}  // namespace snsd::mos
