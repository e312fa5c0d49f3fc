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

#ifndef SNSD_METRICS_SCORES_H_
#define SNSD_METRICS_SCORES_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace snsd::metrics {

struct MetricScore {
  std::string clip_id;
  std::string metric;
  double score = 0.0;
};

// Objective scores keyed by (clip_id, metric). Scores computed by external
// tools (PESQ, POLQA, ViSQOL, ...) are loaded into this table.
class MetricScoreTable {
 public:
  // Throws InputDataError on a duplicate key or a non-finite score.
  void Add(MetricScore row);

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::vector<std::string> Metrics() const;
  // clip_id -> score for one metric.
  std::map<std::string, double> ScoresFor(const std::string &metric) const;
  const std::map<std::pair<std::string, std::string>, double> &rows() const {
    return rows_;
  }

 private:
  // (metric, clip_id) -> score
  std::map<std::pair<std::string, std::string>, double> rows_;
};

// CSV or TSV with header columns clip_id, metric, score (any order, extra
// columns ignored).
MetricScoreTable ParseScoreTable(const std::string &text, const std::string &source);
MetricScoreTable IngestExternalScores(const std::filesystem::path &path);

// Canonical CSV: clip_id,metric,score sorted by metric then clip_id.
std::string FormatScoreTable(const MetricScoreTable &table);

}  // namespace snsd::metrics

#endif  // SNSD_METRICS_SCORES_H_
