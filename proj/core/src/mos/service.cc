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

#include "snsd/mos/service.h"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"

namespace snsd::mos {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kJudgesFile[] = "judges.jsonl";
constexpr char kStudiesDir[] = "studies";
constexpr char kEventsFile[] = "events.jsonl";
constexpr char kSnapshotFile[] = "snapshot.json";

void CreateDirectories(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

}  // namespace

bool IsValidStudyId(const std::string &id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

RatingService::RatingService(fs::path data_dir, ServiceOptions options)
    : data_dir_(std::move(data_dir)), options_(std::move(options)) {
  CreateDirectories(data_dir_ / kStudiesDir);
  const fs::path judges_path = data_dir_ / kJudgesFile;
  if (fs::exists(judges_path)) {
    const std::string text = ReadFileToString(judges_path);
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t nl = text.find('\n', pos);
      if (nl == std::string::npos) break;
      const std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      try {
        judges_.insert(json::parse(line).at("judge_id").get<std::string>());
      } catch (const json::exception &e) {
        throw InputDataError(fmt::format("{}: {}", judges_path.string(), e.what()));
      }
    }
  }

  std::vector<fs::path> dirs;
  for (const auto &entry : fs::directory_iterator(data_dir_ / kStudiesDir))
    if (entry.is_directory() && fs::exists(entry.path() / kEventsFile)) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  for (const auto &dir : dirs) {
    const std::string id = dir.filename().string();
    auto events = ReadEventLog(dir / kEventsFile);
    StudyEntry entry;
    entry.log = std::make_unique<FileEventLog>(dir / kEventsFile);
    entry.engine = StudyEngine::Replay(events, entry.log.get(), options_.clock);
    for (const auto &[token, clip] : entry.engine->tokens()) token_study_[token] = id;
    spdlog::info("loaded study {} ({} events)", id, events.size());
    studies_.emplace(id, std::move(entry));
  }
}

std::string RatingService::RegisterJudge() {
  std::lock_guard lock(mu_);
  std::string id = "j" + options_.tokens().substr(0, 16);
  while (judges_.count(id)) id = "j" + options_.tokens().substr(0, 16);
  const std::string line = json{{"judge_id", id}, {"at", options_.clock()}}.dump() + "\n";
  {
    std::FILE *f = std::fopen((data_dir_ / kJudgesFile).c_str(), "ab");
    if (f == nullptr || std::fwrite(line.data(), 1, line.size(), f) != line.size() ||
        std::fclose(f) != 0)
      throw IoError(fmt::format("cannot register judge: {}", std::strerror(errno)));
  }
  judges_.insert(id);
  return id;
}

bool RatingService::JudgeRegistered(const std::string &judge_id) const {
  std::lock_guard lock(mu_);
  return judges_.count(judge_id) > 0;
}

std::string RatingService::CreateStudy(Study study) {
  ValidateStudy(study, true);
  std::lock_guard lock(mu_);
  if (study.study_id.empty()) {
    do {
      study.study_id = "s" + options_.tokens().substr(0, 12);
    } while (studies_.count(study.study_id));
  }
  if (!IsValidStudyId(study.study_id))
    throw InvalidArgumentError("invalid study id '" + study.study_id + "'");
  const std::string id = study.study_id;
  const fs::path dir = data_dir_ / kStudiesDir / id;
  if (studies_.count(id) || fs::exists(dir)) throw StateError("study '" + id + "' already exists");
  CreateDirectories(dir);
  try {
    StudyEntry entry;
    entry.log = std::make_unique<FileEventLog>(dir / kEventsFile);
    entry.engine = StudyEngine::Create(std::move(study), entry.log.get(), options_.clock, options_.tokens);
    for (const auto &[token, clip] : entry.engine->tokens()) token_study_[token] = id;
    studies_.emplace(id, std::move(entry));
  } catch (...) {
    std::error_code ec;
    fs::remove_all(dir, ec);
    throw;
  }
  return id;
}

StudyEngine *RatingService::FindStudy(const std::string &study_id) const {
  std::lock_guard lock(mu_);
  auto it = studies_.find(study_id);
  return it == studies_.end() ? nullptr : it->second.engine.get();
}

std::vector<std::string> RatingService::StudyIds() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto &[id, e] : studies_) ids.push_back(id);
  return ids;
}

std::optional<RatingService::ResolvedClip> RatingService::ResolveToken(const std::string &token) const {
  std::lock_guard lock(mu_);
  auto it = token_study_.find(token);
  if (it == token_study_.end()) return std::nullopt;
  const StudyEngine &engine = *studies_.at(it->second).engine;
  const auto clip = engine.ClipForToken(token);
  const auto path = engine.PathForClip(*clip);
  return ResolvedClip{it->second, *clip, *path};
}

fs::path RatingService::EventLogPath(const std::string &study_id) const {
  return data_dir_ / kStudiesDir / study_id / kEventsFile;
}

void RatingService::WriteSnapshot(const std::string &study_id) const {
  const StudyEngine *engine = FindStudy(study_id);
  if (engine == nullptr) throw InvalidArgumentError("unknown study " + study_id);
  json snap;
  snap["study_id"] = study_id;
  snap["events"] = engine->event_count();
  json judges = json::array();
  for (const auto &id : engine->JudgeIds()) {
    const auto j = engine->Judge(id);
    judges.push_back({{"judge_id", id},
                      {"phase", JudgePhaseName(j->phase)},
                      {"ratings", j->rating_indices.size()},
                      {"qualification_attempts", j->qualification_attempts}});
  }
  snap["judges"] = std::move(judges);
  json counts = json::object();
  for (const auto &c : engine->study().clips) counts[c.clip_id] = engine->IncludedCount(c.clip_id);
  snap["included_ratings"] = std::move(counts);
  WriteFileAtomic(data_dir_ / kStudiesDir / study_id / kSnapshotFile, snap.dump(2) + "\n");
}

void RatingService::WriteSnapshots() const {
  for (const auto &id : StudyIds()) WriteSnapshot(id);
}

}  // namespace snsd::mos
