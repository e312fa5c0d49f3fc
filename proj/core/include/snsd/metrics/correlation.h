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

#ifndef SNSD_METRICS_CORRELATION_H_
#define SNSD_METRICS_CORRELATION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "snsd/metrics/scores.h"

namespace snsd::metrics {

struct MosEntry {
  double mos = 0.0;
  std::string condition;  // may be empty
};

// Per-clip MOS keyed by clip_id.
using MosTable = std::map<std::string, MosEntry>;

// Reads a CSV/TSV with columns clip_id and mos (condition optional), e.g.
// the per-clip table written by `snsd report`.
MosTable ReadMosTable(const std::filesystem::path &path);
MosTable ParseMosTable(const std::string &text, const std::string &source);

enum class CorrelationUnit {
  kClip,       // one point per clip
  kCondition,  // one point per condition: mean MOS vs mean score
};

struct MetricCorrelation {
  std::string metric;
  double pearson_r = 0.0;
  std::size_t n = 0;  // paired clips or conditions
};

struct CorrelationReport {
  std::vector<MetricCorrelation> metrics;  // sorted by metric name
  // Metrics dropped for too little overlap or a constant sequence.
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinCorrelationPairs = 3;

// Inner-joins MOS and scores on clip_id separately for every metric and
// computes Pearson r. The result does not depend on input row order.
CorrelationReport CorrelateWithMos(const MosTable &mos, const MetricScoreTable &scores,
                                   CorrelationUnit unit = CorrelationUnit::kClip);

// CSV: metric,pearson_r,n
std::string FormatCorrelationCsv(const CorrelationReport &report);

}  // namespace snsd::metrics

#endif  // SNSD_METRICS_CORRELATION_H_
