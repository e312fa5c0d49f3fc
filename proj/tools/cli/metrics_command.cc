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
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "cli/cli.h"
#include "snsd/audio/wav_io.h"
#include "snsd/common/error.h"
#include "snsd/common/table_io.h"
#include "snsd/metrics/correlation.h"
#include "snsd/metrics/scores.h"
#include "snsd/metrics/snr.h"
#include "snsd/synth/manifest.h"

namespace snsd::cli {

namespace fs = std::filesystem;

namespace {

struct SnrFlags {
  std::string reference;
  std::string degraded;
  std::string manifest;
  std::string enhanced_dir;
  std::string condition;
  std::string metric = "snr";
  std::string out;
};

fs::path EnhancedPath(const fs::path &dir, const synth::MixtureRecord &r) {
  const fs::path by_name = dir / fs::path(r.noisy_path).filename();
  if (fs::exists(by_name)) return by_name;
  return dir / r.noisy_path;
}

void RunSnr(const SnrFlags &f) {
  if (!f.reference.empty()) {
    const double snr = metrics::GlobalSnrDb(audio::ReadWav(f.reference), audio::ReadWav(f.degraded));
    WriteOutput(f.out, FormatDouble(snr) + "\n");
    return;
  }
  const fs::path manifest_path(f.manifest);
  const fs::path root = manifest_path.parent_path();
  const auto records = synth::ReadManifest(manifest_path);
  metrics::MetricScoreTable table;
  for (const auto &r : records) {
    const fs::path degraded =
        f.enhanced_dir.empty() ? root / r.noisy_path : EnhancedPath(f.enhanced_dir, r);
    const double snr =
        metrics::GlobalSnrDb(audio::ReadWav(root / r.clean_path), audio::ReadWav(degraded));
    table.Add({f.condition.empty() ? r.clip_id : f.condition + "/" + r.clip_id, f.metric, snr});
  }
  WriteOutput(f.out, metrics::FormatScoreTable(table));
}

struct CorrelateFlags {
  std::string mos;
  std::vector<std::string> scores;
  std::string unit = "clip";
  std::string out;
};

void RunCorrelate(const CorrelateFlags &f) {
  const metrics::MosTable mos = metrics::ReadMosTable(f.mos);
  metrics::MetricScoreTable scores;
  for (const auto &path : f.scores) {
    const metrics::MetricScoreTable table = metrics::IngestExternalScores(path);
    for (const auto &[key, score] : table.rows()) scores.Add({key.second, key.first, score});
  }
  const auto unit = f.unit == "condition" ? metrics::CorrelationUnit::kCondition
                                          : metrics::CorrelationUnit::kClip;
  const auto report = metrics::CorrelateWithMos(mos, scores, unit);
  for (const auto &w : report.warnings) spdlog::warn("{}", w);
  WriteOutput(f.out, metrics::FormatCorrelationCsv(report));
}

}  // namespace

void AddMetricsCommand(CLI::App &app, Action &action) {
  CLI::App *group = app.add_subcommand("metrics", "Objective metrics and MOS correlation");
  group->require_subcommand(1);

  auto snr = std::make_shared<SnrFlags>();
  CLI::App *s = group->add_subcommand("snr", "Global SNR of degraded audio against a reference");
  auto *ref = s->add_option("--reference", snr->reference, "Reference WAV")->check(CLI::ExistingFile);
  auto *deg = s->add_option("--degraded", snr->degraded, "Degraded WAV")->check(CLI::ExistingFile);
  auto *man = s->add_option("--manifest", snr->manifest, "Corpus manifest.tsv; scores every row")
                  ->check(CLI::ExistingFile);
  ref->needs(deg);
  deg->needs(ref);
  man->excludes(ref)->excludes(deg);
  s->add_option("--enhanced-dir", snr->enhanced_dir,
                "With --manifest: score these files instead of the noisy ones")
      ->needs(man)
      ->check(CLI::ExistingDirectory);
  s->add_option("--condition", snr->condition, "With --manifest: clip ids become <condition>/<clip_id>")
      ->needs(man);
  s->add_option("--metric-name", snr->metric, "Metric name in the score table")->capture_default_str();
  s->add_option("--out", snr->out, "Output file (default stdout)");
  s->callback([&action, snr, s] {
    if (s->count("--reference") == 0 && s->count("--manifest") == 0)
      throw CLI::RequiredError("--reference/--degraded or --manifest");
    action = [snr] { RunSnr(*snr); };
  });

  auto corr = std::make_shared<CorrelateFlags>();
  CLI::App *c = group->add_subcommand("correlate", "Pearson correlation of metric scores with MOS");
  c->add_option("--mos", corr->mos, "Per-clip MOS table (clip_id, mos[, condition])")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--scores", corr->scores, "Score table(s) with clip_id, metric, score")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--unit", corr->unit, "Correlate per clip or per condition")
      ->check(CLI::IsMember({"clip", "condition"}))
      ->capture_default_str();
  c->add_option("--out", corr->out, "Output CSV (default stdout)");
  c->callback([&action, corr] { action = [corr] { RunCorrelate(*corr); }; });
}

}  // namespace snsd::cli
