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

#ifndef SNSD_MOS_SERVICE_H_
#define SNSD_MOS_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snsd/mos/engine.h"
#include "snsd/mos/event_log.h"

namespace snsd::mos {

struct ServiceOptions {
  Clock clock = SystemClockMs;
  TokenSource tokens = RandomToken;
};

// All studies under one data directory:
//   <data>/judges.jsonl                 registered judge ids
//   <data>/studies/<id>/events.jsonl    append-only event log
//   <data>/studies/<id>/snapshot.json   derived state, rewritten on demand
// Existing logs are replayed on construction.
class RatingService {
 public:
  explicit RatingService(std::filesystem::path data_dir, ServiceOptions options = {});

  const std::filesystem::path &data_dir() const { return data_dir_; }

  std::string RegisterJudge();
  bool JudgeRegistered(const std::string &judge_id) const;

  // Checks files, persists the study and returns its id (generated when
  // study.study_id is empty). StateError if the id already exists.
  std::string CreateStudy(Study study);
  // nullptr for an unknown id.
  StudyEngine *FindStudy(const std::string &study_id) const;
  std::vector<std::string> StudyIds() const;

  struct ResolvedClip {
    std::string study_id;
    std::string clip_id;
    std::filesystem::path path;
  };
  std::optional<ResolvedClip> ResolveToken(const std::string &token) const;

  std::filesystem::path EventLogPath(const std::string &study_id) const;
  void WriteSnapshot(const std::string &study_id) const;
  void WriteSnapshots() const;

 private:
  struct StudyEntry {
    std::unique_ptr<FileEventLog> log;
    std::unique_ptr<StudyEngine> engine;
  };

  std::filesystem::path data_dir_;
  ServiceOptions options_;
  mutable std::mutex mu_;
  std::set<std::string> judges_;
  std::map<std::string, StudyEntry> studies_;
  std::map<std::string, std::string> token_study_;
};

// Study ids are 1-64 characters from [A-Za-z0-9_-].
bool IsValidStudyId(const std::string &id);

}  // namespace snsd::mos

#endif  // SNSD_MOS_SERVICE_H_
