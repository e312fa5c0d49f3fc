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

#include "snsd/metrics/correlation.h"

#include <cmath>
#include <tuple>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/common/table_io.h"
#include "snsd/metrics/pearson.h"

namespace snsd::metrics {

MosTable ParseMosTable(const std::string &text, const std::string &source) {
  DelimitedTable t = ParseDelimited(text, source);
  const std::size_t c_clip = t.RequireColumn("clip_id", source);
  const std::size_t c_mos = t.RequireColumn("mos", source);
  const auto c_cond = t.Column("condition");
  MosTable table;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto &row = t.rows[i];
    auto mos = ParseDouble(row[c_mos]);
    if (!mos || !std::isfinite(*mos))
      throw InputDataError(fmt::format("{}:{}: MOS '{}' is not a number", source,
                                       t.line_numbers[i], row[c_mos]));
    MosEntry entry{*mos, c_cond ? row[*c_cond] : std::string()};
    if (!table.emplace(row[c_clip], std::move(entry)).second)
      throw InputDataError(
          fmt::format("{}:{}: duplicate clip_id '{}'", source, t.line_numbers[i], row[c_clip]));
  }
  return table;
}

MosTable ReadMosTable(const std::filesystem::path &path) {
  return ParseMosTable(ReadFileToString(path), path.string());
}

CorrelationReport CorrelateWithMos(const MosTable &mos, const MetricScoreTable &scores,
                                   CorrelationUnit unit) {
  CorrelationReport report;
  for (const std::string &metric : scores.Metrics()) {
    std::vector<double> x, y;
    if (unit == CorrelationUnit::kClip) {
      for (const auto &[clip, score] : scores.ScoresFor(metric)) {
        auto it = mos.find(clip);
        if (it == mos.end()) continue;
        x.push_back(it->second.mos);
        y.push_back(score);
      }
    } else {
      // condition -> (sum MOS, sum score, count)
      std::map<std::string, std::tuple<double, double, std::size_t>> groups;
      for (const auto &[clip, score] : scores.ScoresFor(metric)) {
        auto it = mos.find(clip);
        if (it == mos.end()) continue;
        auto &[sm, ss, n] = groups[it->second.condition];
        sm += it->second.mos;
        ss += score;
        ++n;
      }
      for (const auto &[cond, g] : groups) {
        const auto &[sm, ss, n] = g;
        x.push_back(sm / static_cast<double>(n));
        y.push_back(ss / static_cast<double>(n));
      }
    }
    if (x.size() < kMinCorrelationPairs) {
      report.warnings.push_back(fmt::format("metric '{}': only {} paired {} (need {}); omitted",
                                            metric, x.size(),
                                            unit == CorrelationUnit::kClip ? "clips" : "conditions",
                                            kMinCorrelationPairs));
      spdlog::warn("{}", report.warnings.back());
      continue;
    }
    try {
      report.metrics.push_back({metric, PearsonCorrelation(x, y), x.size()});
    } catch (const UndefinedCorrelationError &e) {
      report.warnings.push_back(fmt::format("metric '{}': {}; omitted", metric, e.what()));
      spdlog::warn("{}", report.warnings.back());
    }
  }
  return report;
}

std::string FormatCorrelationCsv(const CorrelationReport &report) {
  std::string out = "metric,pearson_r,n\n";
  for (const auto &m : report.metrics)
    out += JoinCsv({m.metric, FormatDouble(m.pearson_r), std::to_string(m.n)}) + "\n";
  return out;
}

}  // namespace snsd::metrics
