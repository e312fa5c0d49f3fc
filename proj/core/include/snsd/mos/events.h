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

#ifndef SNSD_MOS_EVENTS_H_
#define SNSD_MOS_EVENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "snsd/mos/study.h"

namespace snsd::mos {

// Milliseconds since the Unix epoch.
using TimestampMs = std::int64_t;

// Every state change of a study is one of these events. The state (and so
// every report) is a pure function of the event sequence.
struct StudyCreated {
  Study study;
  // clip token -> clip_id, for rated, training and qualification clips.
  std::map<std::string, std::string> tokens;
  TimestampMs at = 0;
};

struct JudgeJoined {
  std::string judge_id;
  TimestampMs at = 0;
};

// A rated clip handed to a judge; reserves the clip until answered or the
// lease runs out.
struct ClipAssigned {
  std::string judge_id;
  std::string clip_id;
  TimestampMs at = 0;
};

struct TrainingRated {
  std::string judge_id;
  std::string clip_id;
  int score = 0;
  TimestampMs at = 0;
};

struct QualificationSubmitted {
  std::string judge_id;
  std::vector<std::pair<std::string, int>> answers;  // (clip_id, score)
  int right = 0;
  int total = 0;
  bool passed = false;
  TimestampMs at = 0;
};

struct RatingSubmitted {
  std::uint64_t rating_id = 0;
  std::string judge_id;
  std::string clip_id;
  int score = 0;
  TimestampMs at = 0;
};

struct JudgeBlocked {
  std::string judge_id;
  std::string reason;
  TimestampMs at = 0;
};

using Event = std::variant<StudyCreated, JudgeJoined, ClipAssigned, TrainingRated,
                           QualificationSubmitted, RatingSubmitted, JudgeBlocked>;

// One JSON object per event, no trailing newline.
std::string EncodeEvent(const Event &event);
// Throws InputDataError on malformed input.
Event DecodeEvent(const std::string &line);

const char *EventTypeName(const Event &event);

}  // namespace snsd::mos

#endif  // SNSD_MOS_EVENTS_H_
