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

#include "snsd/mos/events.h"

#include <nlohmann/json.hpp>

#include "snsd/common/error.h"
#include "study_json.h"

using nlohmann::json;

namespace snsd::mos {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char *EventTypeName(const Event &event) {
  return std::visit(Overloaded{
                        [](const StudyCreated &) { return "study_created"; },
                        [](const JudgeJoined &) { return "judge_joined"; },
                        [](const ClipAssigned &) { return "clip_assigned"; },
                        [](const TrainingRated &) { return "training_rated"; },
                        [](const QualificationSubmitted &) { return "qualification_submitted"; },
                        [](const RatingSubmitted &) { return "rating_submitted"; },
                        [](const JudgeBlocked &) { return "judge_blocked"; },
                    },
                    event);
}

std::string EncodeEvent(const Event &event) {
  json j = std::visit(
      Overloaded{
          [](const StudyCreated &e) {
            return json{{"study", internal::StudyToJsonValue(e.study)},
                        {"tokens", e.tokens},
                        {"at", e.at}};
          },
          [](const JudgeJoined &e) { return json{{"judge", e.judge_id}, {"at", e.at}}; },
          [](const ClipAssigned &e) {
            return json{{"judge", e.judge_id}, {"clip", e.clip_id}, {"at", e.at}};
          },
          [](const TrainingRated &e) {
            return json{{"judge", e.judge_id}, {"clip", e.clip_id}, {"score", e.score},
                        {"at", e.at}};
          },
          [](const QualificationSubmitted &e) {
            json answers = json::array();
            for (const auto &[clip, score] : e.answers) answers.push_back({clip, score});
            return json{{"judge", e.judge_id}, {"answers", answers}, {"right", e.right},
                        {"total", e.total},    {"passed", e.passed}, {"at", e.at}};
          },
          [](const RatingSubmitted &e) {
            return json{{"id", e.rating_id}, {"judge", e.judge_id}, {"clip", e.clip_id},
                        {"score", e.score},  {"at", e.at}};
          },
          [](const JudgeBlocked &e) {
            return json{{"judge", e.judge_id}, {"reason", e.reason}, {"at", e.at}};
          },
      },
      event);
  j["type"] = EventTypeName(event);
  return j.dump();
}

Event DecodeEvent(const std::string &line) {
  try {
    json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    const TimestampMs at = j.at("at").get<TimestampMs>();
    if (type == "study_created") {
      StudyCreated e;
      e.study = internal::StudyFromJsonValue(j.at("study"));
      e.tokens = j.at("tokens").get<std::map<std::string, std::string>>();
      e.at = at;
      return e;
    }
    if (type == "judge_joined") return JudgeJoined{j.at("judge").get<std::string>(), at};
    if (type == "clip_assigned")
      return ClipAssigned{j.at("judge").get<std::string>(), j.at("clip").get<std::string>(), at};
    if (type == "training_rated")
      return TrainingRated{j.at("judge").get<std::string>(), j.at("clip").get<std::string>(),
                           j.at("score").get<int>(), at};
    if (type == "qualification_submitted") {
      QualificationSubmitted e;
      e.judge_id = j.at("judge").get<std::string>();
      for (const auto &a : j.at("answers"))
        e.answers.emplace_back(a.at(0).get<std::string>(), a.at(1).get<int>());
      e.right = j.at("right").get<int>();
      e.total = j.at("total").get<int>();
      e.passed = j.at("passed").get<bool>();
      e.at = at;
      return e;
    }
    if (type == "rating_submitted")
      return RatingSubmitted{j.at("id").get<std::uint64_t>(), j.at("judge").get<std::string>(),
                             j.at("clip").get<std::string>(), j.at("score").get<int>(), at};
    if (type == "judge_blocked")
      return JudgeBlocked{j.at("judge").get<std::string>(), j.at("reason").get<std::string>(),
                          at};
    throw InputDataError("unknown event type '" + type + "'");
  } catch (const json::exception &e) {
    throw InputDataError(std::string("malformed event: ") + e.what());
  }
}

}  // namespace snsd::mos
