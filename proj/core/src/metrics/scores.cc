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

#include "snsd/metrics/scores.h"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/common/table_io.h"

namespace snsd::metrics {

void MetricScoreTable::Add(MetricScore row) {
  if (row.clip_id.empty() || row.metric.empty())
    throw InputDataError("score row needs a clip_id and a metric");
  if (!std::isfinite(row.score))
    throw InputDataError(fmt::format("non-finite {} score for clip '{}'", row.metric,
                                     row.clip_id));
  auto [it, inserted] = rows_.emplace(std::make_pair(row.metric, row.clip_id), row.score);
  if (!inserted)
    throw InputDataError(fmt::format("duplicate {} score for clip '{}'", row.metric,
                                     row.clip_id));
}

std::vector<std::string> MetricScoreTable::Metrics() const {
  std::set<std::string> names;
  for (const auto &[key, score] : rows_) names.insert(key.first);
  return {names.begin(), names.end()};
}

std::map<std::string, double> MetricScoreTable::ScoresFor(const std::string &metric) const {
  std::map<std::string, double> out;
  for (auto it = rows_.lower_bound({metric, ""}); it != rows_.end() && it->first.first == metric;
       ++it)
    out.emplace(it->first.second, it->second);
  return out;
}

MetricScoreTable ParseScoreTable(const std::string &text, const std::string &source) {
  DelimitedTable t = ParseDelimited(text, source);
  const std::size_t c_clip = t.RequireColumn("clip_id", source);
  const std::size_t c_metric = t.RequireColumn("metric", source);
  const std::size_t c_score = t.RequireColumn("score", source);
  MetricScoreTable table;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto &row = t.rows[i];
    auto score = ParseDouble(row[c_score]);
    if (!score)
      throw InputDataError(fmt::format("{}:{}: score '{}' is not a number", source,
                                       t.line_numbers[i], row[c_score]));
    try {
      table.Add({row[c_clip], row[c_metric], *score});
    } catch (const InputDataError &e) {
      throw InputDataError(fmt::format("{}:{}: {}", source, t.line_numbers[i], e.what()));
    }
  }
  return table;
}

MetricScoreTable IngestExternalScores(const std::filesystem::path &path) {
  return ParseScoreTable(ReadFileToString(path), path.string());
}

std::string FormatScoreTable(const MetricScoreTable &table) {
  std::string out = "clip_id,metric,score\n";
  for (const auto &[key, score] : table.rows())
    out += JoinCsv({key.second, key.first, FormatDouble(score)}) + "\n";
  return out;
}

}  // namespace snsd::metrics
