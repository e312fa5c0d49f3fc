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

#ifndef SNSD_MOS_ENGINE_H_
#define SNSD_MOS_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "snsd/mos/aggregate.h"
#include "snsd/mos/event_log.h"
#include "snsd/mos/events.h"
#include "snsd/mos/study.h"

namespace snsd::mos {

enum class JudgePhase { kNew, kTrained, kQualified, kBlocked };
const char *JudgePhaseName(JudgePhase phase);

// What a judge should do next.
enum class Directive { kTraining, kQualification, kRate, kDone, kBlocked };
const char *DirectiveName(Directive directive);

struct ClipRef {
  std::string clip_id;
  std::string token;
  friend bool operator==(const ClipRef &, const ClipRef &) = default;
};

struct Assignment {
  Directive phase = Directive::kDone;
  // Training clip or rated clip to play next.
  std::optional<ClipRef> clip;
  // The whole qualification set, in this judge's play order.
  std::vector<ClipRef> qualification;
  // Training: clips done / set size. Rate: ratings submitted so far.
  std::size_t progress = 0;
  std::size_t total = 0;
};

enum class SubmitStatus {
  kAccepted,
  kDuplicate,
  kUnknownJudge,
  kUnknownClip,
  kNotQualified,
  kNotAssigned,
  kOutOfRange,
  kBlocked,
  kWrongPhase,
  kIncomplete,
};
const char *SubmitStatusName(SubmitStatus status);

enum class SpamStatus { kOk, kFlagged, kBlocked };
const char *SpamStatusName(SpamStatus status);

struct SpamCheckResult {
  SpamStatus status = SpamStatus::kOk;
  double mean_abs_deviation = 0.0;
  // Ratings on clips with enough peer ratings, capped at the window size.
  std::size_t eligible = 0;
};

struct SubmitResult {
  SubmitStatus status = SubmitStatus::kAccepted;
  std::uint64_t rating_id = 0;  // rated clips only
  bool training = false;
  SpamCheckResult spam;
  bool accepted() const { return status == SubmitStatus::kAccepted; }
};

struct QualificationResult {
  SubmitStatus status = SubmitStatus::kAccepted;
  bool passed = false;
  int right = 0;
  int total = 0;
  double score = 0.0;  // right / total
  int attempts = 0;
  bool blocked = false;
};

struct JudgeState {
  std::string judge_id;
  JudgePhase phase = JudgePhase::kNew;
  std::set<std::string> training_rated;
  int qualification_attempts = 0;
  double qualification_score = 0.0;
  std::set<std::string> assigned;
  std::set<std::string> rated;
  std::vector<std::size_t> rating_indices;  // submission order
  // Latest assignment not yet answered: (clip_id, assigned at).
  std::optional<std::pair<std::string, TimestampMs>> outstanding;
  std::string block_reason;
};

using Clock = std::function<TimestampMs()>;
using TokenSource = std::function<std::string()>;

TimestampMs SystemClockMs();
// 128 random bits as 32 lowercase hex digits.
std::string RandomToken();

// State machine of one study. Every change is appended to the sink first
// and then applied, so replaying the log rebuilds the same state. All
// methods are thread-safe; calls on one study are serialized.
class StudyEngine {
 public:
  static std::unique_ptr<StudyEngine> Create(Study study, EventSink *sink,
                                             Clock clock = SystemClockMs,
                                             TokenSource tokens = RandomToken);
  // The first event must be StudyCreated. `sink` receives new events only
  // and may be null for a read-only replica.
  static std::unique_ptr<StudyEngine> Replay(const std::vector<Event> &events, EventSink *sink,
                                             Clock clock = SystemClockMs);

  const Study &study() const { return study_; }
  const std::map<std::string, std::string> &tokens() const { return tokens_; }
  std::optional<std::string> ClipForToken(const std::string &token) const;
  std::optional<std::filesystem::path> PathForClip(const std::string &clip_id) const;

  // Registers the judge in this study on first contact.
  Assignment NextAssignment(const std::string &judge_id);
  // Training or rated clip.
  SubmitResult SubmitRating(const std::string &judge_id, const std::string &clip_id, int score);
  QualificationResult SubmitQualification(const std::string &judge_id,
                                          const std::vector<std::pair<std::string, int>> &answers);
  SpamCheckResult SpamCheck(const std::string &judge_id) const;
  // No-op for an unknown or already blocked judge.
  void BlockJudge(const std::string &judge_id, const std::string &reason);

  // Throws InputDataError with no included rating, or with `normalize` and
  // a missing anchor condition.
  MosReport Report(bool normalize) const;

  std::vector<RatingRecord> Ratings() const;
  std::optional<JudgeState> Judge(const std::string &judge_id) const;
  std::vector<std::string> JudgeIds() const;
  std::size_t IncludedCount(const std::string &clip_id) const;
  std::size_t event_count() const;

 private:
  enum class ClipKind { kRated, kTraining, kQualification };
  struct ClipInfo {
    ClipKind kind;
    std::filesystem::path path;
    int expected = 0;
    std::string token;
  };
  struct ClipTally {
    long long sum = 0;
    std::size_t n = 0;
  };

  StudyEngine(EventSink *sink, Clock clock);

  void Emit(Event event);
  void Apply(const Event &event);
  void ApplyCreated(const StudyCreated &e);
  JudgeState &JudgeOrThrow(const std::string &judge_id);
  SpamCheckResult SpamCheckLocked(const JudgeState &judge) const;
  Assignment NextLocked(const std::string &judge_id);
  std::vector<ClipRef> QualificationOrder(const std::string &judge_id) const;
  TimestampMs Now() const { return clock_(); }

  mutable std::mutex mu_;
  EventSink *sink_;
  Clock clock_;
  bool created_ = false;
  std::size_t events_ = 0;

  Study study_;
  std::map<std::string, std::string> tokens_;  // token -> clip_id
  std::map<std::string, ClipInfo> clips_;      // all three sets
  std::map<std::string, ClipTally> tally_;     // rated clips, included only
  std::map<std::string, JudgeState> judges_;
  std::vector<RatingRecord> ratings_;
};

}  // namespace snsd::mos

#endif  // SNSD_MOS_ENGINE_H_
