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

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "cli/cli.h"
#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/metrics/correlation.h"
#include "snsd/metrics/scores.h"
#include "snsd/mos/engine.h"
#include "snsd/mos/event_log.h"
#include "snsd/mos/normalize.h"
#include "snsd/mos/report_io.h"

namespace snsd::cli {

namespace fs = std::filesystem;

namespace {

struct ReportFlags {
  std::string events;
  std::string ratings;
  std::string out;
  bool normalize = false;
  std::vector<double> anchors;
  std::string noisy_condition;
  std::string reference_condition;
  int target = 10;
  std::vector<std::string> scores;
  std::string unit = "clip";
};

void RunReport(const ReportFlags &f) {
  if (f.target < 1) throw InvalidArgumentError("--target must be at least 1");
  if (!f.anchors.empty() && f.anchors.size() != 2)
    throw InvalidArgumentError("--reference-anchors takes two values: noisy,wiener");
  RequireFreshOutputDir(f.out);

  mos::Study study;
  std::vector<mos::RatingRecord> ratings;
  if (!f.events.empty()) {
    const auto engine = mos::StudyEngine::Replay(mos::ReadEventLog(f.events), nullptr);
    study = engine->study();
    ratings = engine->Ratings();
  } else {
    auto exported = mos::ParseRatingsTable(ReadFileToString(f.ratings), f.ratings);
    study = std::move(exported.study);
    study.config.ratings_per_clip_target = f.target;
    ratings = std::move(exported.ratings);
  }
  mos::MosReport report = mos::AggregateMos(study, ratings);

  if (f.normalize) {
    auto &c = study.config;
    if (!f.noisy_condition.empty()) c.noisy_condition = f.noisy_condition;
    if (!f.reference_condition.empty()) c.reference_condition = f.reference_condition;
    if (!f.anchors.empty()) {
      c.reference_noisy_mos = f.anchors[0];
      c.reference_wiener_mos = f.anchors[1];
    }
    mos::NormalizeToReference(report, c.noisy_condition, c.reference_condition,
                              {c.reference_noisy_mos, c.reference_wiener_mos});
  }

  auto files = mos::ReportFiles(report);
  if (!f.scores.empty()) {
    metrics::MetricScoreTable scores;
    for (const auto &path : f.scores) {
      const metrics::MetricScoreTable table = metrics::IngestExternalScores(path);
      for (const auto &[key, score] : table.rows()) scores.Add({key.second, key.first, score});
    }
    metrics::MosTable mos_table;
    for (const auto &c : report.clips) mos_table[c.clip_id] = {c.mos, c.condition};
    const auto unit = f.unit == "condition" ? metrics::CorrelationUnit::kCondition
                                            : metrics::CorrelationUnit::kClip;
    const auto corr = metrics::CorrelateWithMos(mos_table, scores, unit);
    for (const auto &w : corr.warnings) spdlog::warn("{}", w);
    files.emplace_back("correlation.csv", metrics::FormatCorrelationCsv(corr));
  }

  StagingDirectory stage(f.out);
  for (const auto &[name, content] : files) WriteFileAtomic(stage.path() / name, content);
  stage.Commit();
  std::printf("wrote %zu report files to %s\n", files.size(), f.out.c_str());
}

}  // namespace

void AddReportCommand(CLI::App &app, Action &action) {
  auto flags = std::make_shared<ReportFlags>();
  CLI::App *cmd = app.add_subcommand("report", "MOS tables from a study event log or ratings export");
  auto *events = cmd->add_option("--events", flags->events, "Study event log (events.jsonl)")
                     ->check(CLI::ExistingFile);
  auto *ratings = cmd->add_option("--ratings", flags->ratings,
                                  "Ratings CSV/TSV: clip_id, condition, score "
                                  "[, judge_id, noise_type, excluded]")
                      ->check(CLI::ExistingFile);
  events->excludes(ratings);
  cmd->add_option("--out", flags->out, "Output directory; must not exist or be empty")->required();
  cmd->add_flag("--normalize", flags->normalize, "Map condition MOS onto the reference anchors");
  cmd->add_option("--reference-anchors", flags->anchors, "Reference MOS of the anchors: noisy,wiener")
      ->delimiter(',');
  cmd->add_option("--noisy-condition", flags->noisy_condition, "Noisy anchor condition name");
  cmd->add_option("--reference-condition", flags->reference_condition,
                  "Enhanced anchor condition name");
  cmd->add_option("--target", flags->target, "With --ratings: ratings per clip target")
      ->capture_default_str();
  cmd->add_option("--scores", flags->scores,
                  "Objective score table(s); adds correlation.csv")
      ->check(CLI::ExistingFile);
  cmd->add_option("--correlation-unit", flags->unit, "clip or condition")
      ->check(CLI::IsMember({"clip", "condition"}))
      ->capture_default_str();
  cmd->callback([&action, flags, cmd] {
    if (cmd->count("--events") == 0 && cmd->count("--ratings") == 0)
      throw CLI::RequiredError("--events or --ratings");
    action = [flags] { RunReport(*flags); };
  });
}

}  // namespace snsd::cli
