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

#include "snsd/synth/corpus.h"

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "snsd/audio/wav_io.h"
#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/synth/rng.h"
#include "snsd/synth/segment.h"

namespace fs = std::filesystem;

namespace snsd::synth {

namespace {

constexpr std::uint64_t kCleanSalt = 1;
constexpr std::uint64_t kNoiseSalt = 2;

}  // namespace

void ValidateConfig(const SynthesisConfig &config) {
  if (!(config.clip_length_s > 0.0) || !std::isfinite(config.clip_length_s))
    throw InvalidArgumentError("clip length must be a positive number of seconds");
  if (config.snr_levels_db.empty())
    throw InvalidArgumentError("at least one SNR level is required");
  std::set<double> distinct;
  for (double snr : config.snr_levels_db) {
    if (!std::isfinite(snr)) throw InvalidArgumentError("SNR levels must be finite");
    if (!distinct.insert(snr).second)
      throw InvalidArgumentError(fmt::format("duplicate SNR level {}", snr));
  }
  if (config.sample_rate_hz <= 0) throw InvalidArgumentError("sample rate must be positive");
  if (!std::isfinite(config.target_level_dbfs) || config.target_level_dbfs >= 0.0)
    throw InvalidArgumentError("target level must be a finite negative dBFS value");
  if (config.workers < 1) throw InvalidArgumentError("workers must be at least 1");
}

std::size_t AugmentationFactor(const SourceInventory &inventory,
                               const SynthesisConfig &config) {
  return inventory.NoiseTypes().size() * config.snr_levels_db.size();
}

std::size_t FullSweepClipCount(const SourceInventory &inventory,
                               const SynthesisConfig &config) {
  return inventory.clean_utterances.size() * AugmentationFactor(inventory, config);
}

ClipPlan PlanClip(const SourceInventory &inventory, const SynthesisConfig &config,
                  std::size_t index) {
  const auto speakers = inventory.Speakers();
  const auto noise_types = inventory.NoiseTypes();
  if (speakers.empty() || noise_types.empty())
    throw InvalidArgumentError("inventory has no speakers or no noise types");
  const std::size_t n_snr = config.snr_levels_db.size();
  const std::size_t per_segment = noise_types.size() * n_snr;
  ClipPlan plan;
  plan.index = index;
  plan.segment_index = index / per_segment;
  const std::size_t cell = index % per_segment;
  plan.speaker_id = speakers[plan.segment_index % speakers.size()];
  plan.noise_type = noise_types[cell / n_snr];
  plan.snr_db = config.snr_levels_db[cell % n_snr];
  return plan;
}

std::string ClipId(std::size_t index) { return fmt::format("clip_{:06d}", index + 1); }

namespace {

SynthesizedClip BuildClip(const SourceLibrary &library, const SynthesisConfig &config,
                          const ClipPlan &plan, const audio::AudioClip &clean_segment) {
  Rng noise_rng = Rng::ForStream(config.seed, plan.index, kNoiseSalt);
  audio::AudioClip noise = AssembleNoiseSegment(library, plan.noise_type,
                                                clean_segment.size(), noise_rng);
  MixOptions options;
  options.target_level_dbfs = config.target_level_dbfs;
  SynthesizedClip out;
  out.mixture = MixAtSnr(clean_segment, noise, plan.snr_db, options);

  MixtureRecord &r = out.record;
  r.clip_id = ClipId(plan.index);
  r.noisy_path = fs::path("noisy") / ("noisy_" + r.clip_id + ".wav");
  r.clean_path = fs::path("clean") / ("clean_" + r.clip_id + ".wav");
  r.noise_path = fs::path("noise") / ("noise_" + r.clip_id + ".wav");
  r.snr_db = plan.snr_db;
  r.noise_type = plan.noise_type;
  r.speaker_id = plan.speaker_id;
  r.segment_id = fmt::format("seg_{:06d}", plan.segment_index + 1);
  r.duration_s = clean_segment.duration_s();
  r.post_mix_gain = out.mixture.post_mix_gain;
  return out;
}

audio::AudioClip CleanSegmentFor(const SourceLibrary &library,
                                 const SynthesisConfig &config, const ClipPlan &plan) {
  Rng rng = Rng::ForStream(config.seed, plan.segment_index, kCleanSalt);
  return AssembleCleanSegment(library, plan.speaker_id,
                              SecondsToSamples(config.clip_length_s, library.sample_rate_hz()),
                              rng);
}

}  // namespace

SynthesizedClip SynthesizeClip(const SourceLibrary &library,
                               const SynthesisConfig &config, std::size_t index) {
  ValidateConfig(config);
  ClipPlan plan = PlanClip(library.inventory(), config, index);
  return BuildClip(library, config, plan, CleanSegmentFor(library, config, plan));
}

std::vector<MixtureRecord> SynthesizeCorpus(const SourceLibrary &library,
                                            const SynthesisConfig &config,
                                            const fs::path &out_dir) {
  ValidateConfig(config);
  if (library.sample_rate_hz() != config.sample_rate_hz)
    throw InvalidArgumentError(
        fmt::format("sources are at {} Hz but config asks for {} Hz",
                    library.sample_rate_hz(), config.sample_rate_hz));

  StagingDirectory staging(out_dir);
  const fs::path root = staging.path();
  if (config.total_clips > 0)
    for (const char *sub : {"noisy", "clean", "noise"}) fs::create_directories(root / sub);

  std::vector<std::optional<MixtureRecord>> records(config.total_clips);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  struct ClipFailure {
    std::size_t index;
    ErrorKind kind;
    std::string message;
  };
  std::optional<ClipFailure> first_error;

  auto worker = [&] {
    std::optional<std::size_t> cached_segment;
    audio::AudioClip segment;
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.total_clips) return;
      try {
        ClipPlan plan = PlanClip(library.inventory(), config, i);
        if (cached_segment != plan.segment_index) {
          segment = CleanSegmentFor(library, config, plan);
          cached_segment = plan.segment_index;
        }
        SynthesizedClip clip = BuildClip(library, config, plan, segment);
        audio::WriteWav(clip.mixture.noisy, root / clip.record.noisy_path);
        audio::WriteWav(clip.mixture.clean, root / clip.record.clean_path);
        audio::WriteWav(clip.mixture.noise, root / clip.record.noise_path);
        records[i] = std::move(clip.record);
        completed.fetch_add(1);
      } catch (const std::exception &e) {
        const auto *err = dynamic_cast<const Error *>(&e);
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error || i < first_error->index)
          first_error = ClipFailure{i, err ? err->kind() : ErrorKind::kIo, e.what()};
        failed.store(true);
      }
    }
  };

  const int n_workers =
      static_cast<int>(std::min<std::size_t>(config.workers, std::max<std::size_t>(1, config.total_clips)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (first_error)
    throw Error(first_error->kind,
                fmt::format("synthesis aborted after {} of {} clips; clip {}: {}",
                            completed.load(), config.total_clips,
                            ClipId(first_error->index), first_error->message));

  std::vector<MixtureRecord> out;
  out.reserve(records.size());
  for (auto &r : records) out.push_back(std::move(*r));
  WriteManifest(out, root / kManifestFileName);
  staging.Commit();
  spdlog::info("wrote {} clips to {}", out.size(), out_dir.string());
  return out;
}

}  // namespace snsd::synth
