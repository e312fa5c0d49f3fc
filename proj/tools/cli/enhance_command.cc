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

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "cli/cli.h"
#include "snsd/audio/wav_io.h"
#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/enhance/wiener.h"

namespace snsd::cli {

namespace fs = std::filesystem;

namespace {

struct EnhanceFlags {
  std::string in;
  std::string out;
  double gain_floor_db = -25.0;
  double lambda = 0.9;
  double vad_margin_db = 3.0;
};

bool IsWav(const fs::path &p) {
  std::string ext = p.extension().string();
  for (auto &c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".wav";
}

void RunEnhance(const EnhanceFlags &f) {
  enhance::WienerParams params;
  params.gain_floor = std::pow(10.0, f.gain_floor_db / 20.0);
  params.lambda_noise = f.lambda;
  params.vad_margin_db = f.vad_margin_db;
  params.Validate();
  RequireFreshOutputDir(f.out);

  // (input file, output path relative to --out)
  std::vector<std::pair<fs::path, fs::path>> jobs;
  const fs::path in(f.in);
  if (fs::is_directory(in)) {
    for (const auto &e : fs::recursive_directory_iterator(in))
      if (e.is_regular_file() && IsWav(e.path())) jobs.emplace_back(e.path(), fs::relative(e.path(), in));
    std::sort(jobs.begin(), jobs.end());
    if (jobs.empty()) throw InputDataError("no .wav files under " + in.string());
  } else if (fs::is_regular_file(in)) {
    jobs.emplace_back(in, in.filename());
  } else {
    throw FileNotFoundError(in.string());
  }

  StagingDirectory stage(f.out);
  for (const auto &[src, rel] : jobs) {
    const audio::AudioClip noisy = audio::ReadWav(src);
    enhance::StftConfig stft;
    stft.sample_rate_hz = noisy.sample_rate_hz;
    const audio::AudioClip clean = enhance::Enhance(noisy, params, stft);
    const fs::path dst = stage.path() / rel;
    fs::create_directories(dst.parent_path());
    audio::WriteWav(clean, dst);
    spdlog::debug("enhanced {}", rel.string());
  }
  stage.Commit();
  std::printf("enhanced %zu files into %s\n", jobs.size(), f.out.c_str());
}

}  // namespace

void AddEnhanceCommand(CLI::App &app, Action &action) {
  CLI::App *group = app.add_subcommand("enhance", "Speech enhancement");
  group->require_subcommand(1);
  auto flags = std::make_shared<EnhanceFlags>();
  CLI::App *cmd = group->add_subcommand("wiener", "Wiener-filter noise suppression");
  cmd->add_option("--in", flags->in, "Input WAV file or directory (searched recursively)")->required();
  cmd->add_option("--out", flags->out, "Output directory; mirrors the input tree")->required();
  cmd->add_option("--gain-floor-db", flags->gain_floor_db, "Minimum gain in dB")->capture_default_str();
  cmd->add_option("--lambda", flags->lambda, "Noise PSD smoothing factor in [0, 1)")
      ->capture_default_str();
  cmd->add_option("--vad-margin-db", flags->vad_margin_db,
                  "Frames within this margin of the noise floor count as noise")
      ->capture_default_str();
  cmd->callback([&action, flags] { action = [flags] { RunEnhance(*flags); }; });
}

}  // namespace snsd::cli
