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
#include "snsd/common/error.h"
#include "snsd/synth/corpus.h"
#include "snsd/synth/inventory.h"

namespace snsd::cli {

namespace {

struct SynthFlags {
  std::string clean_dir;
  std::string noise_dir;
  std::string out;
  std::size_t clips = 0;
  bool full_sweep = false;
  double length_s = 10.0;
  std::vector<double> snrs = {0, 5, 10, 15, 20};
  double level_dbfs = -25.0;
  int rate = 16000;
  std::uint64_t seed = 0;
  int workers = 1;
};

void RunSynth(const SynthFlags &f) {
  synth::SynthesisConfig config;
  config.total_clips = f.full_sweep ? 0 : f.clips;
  config.clip_length_s = f.length_s;
  config.snr_levels_db = f.snrs;
  config.sample_rate_hz = f.rate;
  config.target_level_dbfs = f.level_dbfs;
  config.seed = f.seed;
  config.workers = f.workers;
  synth::ValidateConfig(config);
  if (!f.full_sweep && f.clips == 0) throw InvalidArgumentError("--clips must be positive");
  RequireFreshOutputDir(f.out);

  synth::ScanResult scan = synth::ScanSources(f.clean_dir, f.noise_dir);
  for (const auto &w : scan.warnings) spdlog::warn("{}", w);
  if (f.full_sweep) config.total_clips = synth::FullSweepClipCount(scan.inventory, config);
  spdlog::info("{} speakers, {} utterances, {} noise types, augmentation factor {}",
               scan.inventory.Speakers().size(), scan.inventory.clean_utterances.size(),
               scan.inventory.NoiseTypes().size(),
               synth::AugmentationFactor(scan.inventory, config));
  const auto library = synth::SourceLibrary::Load(std::move(scan.inventory), config.sample_rate_hz);
  const auto records = synth::SynthesizeCorpus(library, config, f.out);
  std::printf("wrote %zu clips to %s\n", records.size(), f.out.c_str());
}

}  // namespace

void AddSynthCommand(CLI::App &app, Action &action) {
  auto flags = std::make_shared<SynthFlags>();
  CLI::App *cmd = app.add_subcommand("synth", "Synthesize a noisy speech corpus");
  cmd->add_option("--clean-dir", flags->clean_dir, "Clean speech root (one subdirectory per speaker)")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--noise-dir", flags->noise_dir, "Noise root (one subdirectory per noise type)")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--out", flags->out, "Output directory; must not exist or be empty")->required();
  auto *clips = cmd->add_option("--clips", flags->clips, "Number of clips to synthesize");
  auto *sweep = cmd->add_flag("--full-sweep", flags->full_sweep,
                              "One clip per (utterance, noise type, SNR)");
  clips->excludes(sweep);
  cmd->add_option("--length", flags->length_s, "Clip length in seconds")->capture_default_str();
  cmd->add_option("--snrs", flags->snrs, "Comma-separated SNR levels in dB")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--level", flags->level_dbfs, "Clean speech level in dBFS")->capture_default_str();
  cmd->add_option("--rate", flags->rate, "Output sample rate in Hz")->capture_default_str();
  cmd->add_option("--seed", flags->seed, "Random seed")->capture_default_str();
  cmd->add_option("--workers", flags->workers, "Worker threads; output does not depend on it")
      ->capture_default_str();
  cmd->callback([&action, flags, cmd] {
    if (cmd->count("--clips") == 0 && !flags->full_sweep)
      throw CLI::RequiredError("--clips or --full-sweep");
    action = [flags] { RunSynth(*flags); };
  });
}

}  // namespace snsd::cli
