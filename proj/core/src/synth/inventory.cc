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

#include "snsd/synth/inventory.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "snsd/audio/resample.h"
#include "snsd/audio/wav_io.h"
#include "snsd/common/error.h"

namespace fs = std::filesystem;

namespace snsd::synth {

std::vector<std::string> SourceInventory::Speakers() const {
  std::set<std::string> s;
  for (const auto &u : clean_utterances) s.insert(u.speaker_id);
  return {s.begin(), s.end()};
}

std::vector<std::string> SourceInventory::NoiseTypes() const {
  std::set<std::string> s;
  for (const auto &r : noise_recordings) s.insert(r.noise_type);
  return {s.begin(), s.end()};
}

std::vector<std::size_t> SourceInventory::UtterancesOf(std::string_view speaker_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clean_utterances.size(); ++i)
    if (clean_utterances[i].speaker_id == speaker_id) out.push_back(i);
  return out;
}

std::vector<std::size_t> SourceInventory::RecordingsOf(std::string_view noise_type) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < noise_recordings.size(); ++i)
    if (noise_recordings[i].noise_type == noise_type) out.push_back(i);
  return out;
}

std::string InferSourceLabel(const fs::path &relative_path) {
  auto it = relative_path.begin();
  if (std::distance(relative_path.begin(), relative_path.end()) > 1)
    return it->string();
  std::string stem = relative_path.stem().string();
  auto cut = stem.find_first_of("_-");
  if (cut != std::string::npos && cut > 0) stem.resize(cut);
  return stem;
}

namespace {

bool IsWav(const fs::path &p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wav";
}

struct ScannedFile {
  std::string label;
  fs::path path;
  double duration_s;
};

std::vector<ScannedFile> ScanDirectory(const fs::path &dir, std::string_view role,
                                       std::vector<std::string> &warnings) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw InputDataError(fmt::format("{} directory not found: {}", role, dir.string()));
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(dir, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file() && IsWav(it->path())) files.push_back(it->path());
  }
  std::vector<ScannedFile> out;
  for (const auto &file : files) {
    try {
      audio::AudioClip clip = audio::ReadWav(file);
      if (clip.empty()) throw MalformedWavError(file.string() + ": no samples");
      out.push_back({InferSourceLabel(fs::relative(file, dir)), file, clip.duration_s()});
    } catch (const InputDataError &e) {
      warnings.push_back(fmt::format("skipping {} file {}: {}", role, file.string(), e.what()));
      spdlog::warn("{}", warnings.back());
    }
  }
  if (out.empty())
    throw InputDataError(
        fmt::format("{} directory has no usable WAV files: {}", role, dir.string()));
  std::sort(out.begin(), out.end(), [](const ScannedFile &a, const ScannedFile &b) {
    return std::tie(a.label, a.path) < std::tie(b.label, b.path);
  });
  return out;
}

}  // namespace

ScanResult ScanSources(const fs::path &clean_dir, const fs::path &noise_dir) {
  ScanResult result;
  for (auto &f : ScanDirectory(clean_dir, "clean", result.warnings))
    result.inventory.clean_utterances.push_back({f.label, f.path, f.duration_s});
  for (auto &f : ScanDirectory(noise_dir, "noise", result.warnings))
    result.inventory.noise_recordings.push_back({f.label, f.path, f.duration_s});
  return result;
}

SourceLibrary SourceLibrary::Load(SourceInventory inventory, int sample_rate_hz) {
  if (sample_rate_hz <= 0) throw InvalidArgumentError("sample rate must be positive");
  std::vector<audio::AudioClip> clean, noise;
  clean.reserve(inventory.clean_utterances.size());
  noise.reserve(inventory.noise_recordings.size());
  for (const auto &u : inventory.clean_utterances)
    clean.push_back(audio::Resample(audio::ReadWav(u.path), sample_rate_hz));
  for (const auto &r : inventory.noise_recordings)
    noise.push_back(audio::Resample(audio::ReadWav(r.path), sample_rate_hz));
  SourceLibrary lib = FromClips(std::move(inventory), std::move(clean), std::move(noise));
  return lib;
}

SourceLibrary SourceLibrary::FromClips(SourceInventory inventory,
                                       std::vector<audio::AudioClip> clean,
                                       std::vector<audio::AudioClip> noise) {
  if (clean.size() != inventory.clean_utterances.size() ||
      noise.size() != inventory.noise_recordings.size())
    throw InvalidArgumentError("source library: clip count does not match inventory");
  if (clean.empty() || noise.empty())
    throw InvalidArgumentError("source library needs clean and noise sources");
  const int rate = clean.front().sample_rate_hz;
  for (const auto *list : {&clean, &noise})
    for (const auto &c : *list) {
      audio::ValidateClip(c, "source clip");
      if (c.sample_rate_hz != rate)
        throw SampleRateMismatchError("source clips must share one sample rate");
    }
  SourceLibrary lib;
  lib.inventory_ = std::move(inventory);
  lib.sample_rate_hz_ = rate;
  lib.clean_ = std::move(clean);
  lib.noise_ = std::move(noise);
  return lib;
}

}  // namespace snsd::synth
