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

#include "snsd/mos/report_io.h"

#include <map>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "snsd/common/error.h"
#include "snsd/common/table_io.h"

namespace snsd::mos {

using nlohmann::json;

namespace {

const NormalizedCondition *FindNormalized(const MosReport &report, const std::string &condition) {
  for (const auto &n : report.normalized)
    if (n.condition == condition) return &n;
  return nullptr;
}

}  // namespace

std::string ReportToJson(const MosReport &report) {
  json j;
  j["clips"] = json::array();
  for (const auto &c : report.clips) {
    j["clips"].push_back({{"clip_id", c.clip_id},
                          {"condition", c.condition},
                          {"noise_type", c.noise_type},
                          {"mos", c.mos},
                          {"n", c.n},
                          {"below_target", c.below_target}});
  }
  j["unrated_clips"] = report.unrated_clips;
  j["conditions"] = json::array();
  for (const auto &c : report.conditions) {
    json row = {{"condition", c.condition}, {"mos", c.mos}, {"clips", c.clips}, {"ratings", c.ratings}};
    row["ci95"] = c.ci_defined ? json(c.ci95) : json(nullptr);
    if (const auto *n = FindNormalized(report, c.condition)) row["normalized_mos"] = n->normalized_mos;
    j["conditions"].push_back(std::move(row));
  }
  j["histogram"] = json::array();
  for (const auto &h : report.histograms) {
    j["histogram"].push_back({{"condition", h.condition},
                              {"bin_low", kHistogramLow},
                              {"bin_width", kHistogramBinWidth},
                              {"counts", h.counts}});
  }
  j["noise_types"] = json::array();
  for (const auto &n : report.noise_types) {
    j["noise_types"].push_back(
        {{"condition", n.condition}, {"noise_type", n.noise_type}, {"mos", n.mos}, {"clips", n.clips}});
  }
  if (report.anchor_fit) {
    j["normalization"] = {{"a", report.anchor_fit->a},
                          {"b", report.anchor_fit->b},
                          {"offset_only", report.anchor_fit->offset_only}};
  }
  return j.dump(2) + "\n";
}

std::string SummaryCsv(const MosReport &report) {
  std::string out = "condition,mos,ci95,clips,ratings,normalized_mos\n";
  for (const auto &c : report.conditions) {
    const auto *n = FindNormalized(report, c.condition);
    out += JoinCsv({c.condition, FormatDouble(c.mos), c.ci_defined ? FormatDouble(c.ci95) : "",
                    std::to_string(c.clips), std::to_string(c.ratings),
                    n ? FormatDouble(n->normalized_mos) : ""}) +
           "\n";
  }
  return out;
}

std::string HistogramCsv(const MosReport &report) {
  std::string out = "condition,bin_low,bin_high,count\n";
  for (const auto &h : report.histograms) {
    for (std::size_t i = 0; i < kHistogramBins; ++i) {
      const double lo = kHistogramLow + kHistogramBinWidth * static_cast<double>(i);
      out += JoinCsv({h.condition, FormatDouble(lo), FormatDouble(lo + kHistogramBinWidth),
                      std::to_string(h.counts[i])}) +
             "\n";
    }
  }
  return out;
}

std::string NoiseTypeCsv(const MosReport &report) {
  std::string out = "condition,noise_type,mos,clips\n";
  for (const auto &n : report.noise_types)
    out += JoinCsv({n.condition, n.noise_type, FormatDouble(n.mos), std::to_string(n.clips)}) + "\n";
  return out;
}

std::string ClipsCsv(const MosReport &report) {
  std::string out = "clip_id,condition,noise_type,mos,n,below_target\n";
  for (const auto &c : report.clips) {
    out += JoinCsv({c.clip_id, c.condition, c.noise_type, FormatDouble(c.mos), std::to_string(c.n),
                    c.below_target ? "1" : "0"}) +
           "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ReportFiles(const MosReport &report) {
  return {{"report.json", ReportToJson(report)},
          {"summary.csv", SummaryCsv(report)},
          {"histogram.csv", HistogramCsv(report)},
          {"noise_type.csv", NoiseTypeCsv(report)},
          {"clips.csv", ClipsCsv(report)}};
}

RatingsExport ParseRatingsTable(const std::string &text, const std::string &source) {
  const DelimitedTable table = ParseDelimited(text, source);
  const std::size_t clip_col = table.RequireColumn("clip_id", source);
  const std::size_t cond_col = table.RequireColumn("condition", source);
  const std::size_t score_col = table.RequireColumn("score", source);
  const auto judge_col = table.Column("judge_id");
  const auto noise_col = table.Column("noise_type");
  const auto excluded_col = table.Column("excluded");

  RatingsExport out;
  out.study.study_id = "export";
  std::map<std::string, StudyClip> clips;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    const std::string where = fmt::format("{}:{}", source, table.line_numbers[r]);
    StudyClip clip{row[clip_col], row[cond_col], noise_col ? row[*noise_col] : "", {}};
    if (clip.clip_id.empty() || clip.condition.empty())
      throw InputDataError(where + ": empty clip_id or condition");
    auto [it, inserted] = clips.emplace(clip.clip_id, clip);
    if (!inserted && !(it->second == clip))
      throw InputDataError(where + ": conflicting condition or noise type for " + clip.clip_id);
    const auto score = ParseInt(row[score_col]);
    if (!score || *score < 1 || *score > 5)
      throw InputDataError(where + ": score must be an integer in 1..5");
    RatingRecord rec;
    rec.rating_id = r + 1;
    rec.clip_id = clip.clip_id;
    rec.score = static_cast<int>(*score);
    if (judge_col) {
      rec.judge_id = row[*judge_col];
      if (!rec.judge_id.empty() && !seen.emplace(rec.judge_id, rec.clip_id).second)
        throw InputDataError(where + ": duplicate rating by " + rec.judge_id + " for " + rec.clip_id);
    }
    if (excluded_col) {
      const std::string v(TrimWhitespace(row[*excluded_col]));
      if (v == "1" || v == "true") {
        rec.excluded = true;
      } else if (!(v.empty() || v == "0" || v == "false")) {
        throw InputDataError(where + ": excluded must be 0/1/true/false");
      }
    }
    out.ratings.push_back(std::move(rec));
  }
  if (out.ratings.empty()) throw InputDataError(source + ": no ratings");
  for (auto &[id, clip] : clips) out.study.clips.push_back(std::move(clip));
  return out;
}

}  // namespace snsd::mos
