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

#ifndef SNSD_MOS_REPORT_IO_H_
#define SNSD_MOS_REPORT_IO_H_

#include <string>
#include <utility>
#include <vector>

#include "snsd/mos/aggregate.h"
#include "snsd/mos/study.h"

namespace snsd::mos {

// Deterministic renderings: same report, same bytes.
std::string ReportToJson(const MosReport &report);

// condition,mos,ci95,clips,ratings,normalized_mos
std::string SummaryCsv(const MosReport &report);
// condition,bin_low,bin_high,count
std::string HistogramCsv(const MosReport &report);
// condition,noise_type,mos,clips
std::string NoiseTypeCsv(const MosReport &report);
// clip_id,condition,noise_type,mos,n,below_target
std::string ClipsCsv(const MosReport &report);

// (file name, contents) for every table above plus report.json.
std::vector<std::pair<std::string, std::string>> ReportFiles(const MosReport &report);

// A flat ratings export: one row per rating with columns clip_id,
// condition and score, and optionally judge_id, noise_type, excluded.
// Builds a study holding exactly the rated clips.
struct RatingsExport {
  Study study;
  std::vector<RatingRecord> ratings;
};
RatingsExport ParseRatingsTable(const std::string &text, const std::string &source);

}  // namespace snsd::mos

#endif  // SNSD_MOS_REPORT_IO_H_
