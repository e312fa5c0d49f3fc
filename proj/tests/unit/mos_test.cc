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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "snsd/common/error.h"
#include "snsd/mos/aggregate.h"
#include "snsd/mos/engine.h"
#include "snsd/mos/event_log.h"
#include "snsd/mos/events.h"
#include "snsd/mos/normalize.h"
#include "snsd/mos/report_io.h"
#include "snsd/mos/study.h"
#include "snsd/synth/manifest.h"
#include "support/mos_sim.h"
#include "support/test_support.h"

namespace snsd::mos {
namespace {

using testing::MakeStudy;

std::vector<std::pair<std::string, int>> CorrectAnswers(const Study &s) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto &q : s.qualification) out.emplace_back(q.clip_id, q.expected);
  return out;
}

// Answers `right` traps correctly and the rest as badly as possible.
std::vector<std::pair<std::string, int>> AnswersWithRight(const Study &s, int right) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto &q : s.qualification) {
    const bool good = static_cast<int>(out.size()) < right;
    out.emplace_back(q.clip_id, good ? q.expected : 6 - q.expected);
  }
  return out;
}

void FinishTraining(StudyEngine &e, const std::string &judge) {
  for (;;) {
    const Assignment a = e.NextAssignment(judge);
    if (a.phase != Directive::kTraining) return;
    ASSERT_TRUE(e.SubmitRating(judge, a.clip->clip_id, 3).accepted());
  }
}

void Qualify(StudyEngine &e, const std::string &judge) {
  FinishTraining(e, judge);
  ASSERT_TRUE(e.SubmitQualification(judge, CorrectAnswers(e.study())).passed);
}

RatingRecord Rec(const std::string &judge, const std::string &clip, int score,
                 bool excluded = false) {
  static std::uint64_t id = 0;
  return {++id, judge, clip, score, 0, excluded};
}

// ---- study ----------------------------------------------------------------

TEST(Study, ValidStudyPasses) { EXPECT_NO_THROW(ValidateStudy(MakeStudy(6, {"Noisy"}), false)); }

TEST(Study, StructuralErrors) {
  Study s = MakeStudy(4, {"Noisy"});
  s.clips.clear();
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);

  s = MakeStudy(4, {"Noisy"});
  s.config.ratings_per_clip_target = 0;
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);

  s = MakeStudy(4, {"Noisy"}, 1);
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);

  s = MakeStudy(4, {"Noisy"});
  s.clips.push_back(s.clips.front());
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);

  s = MakeStudy(4, {"Noisy"});
  s.qualification[0].expected = 3;
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);
}

TEST(Study, QualificationClipInRatedSetIsRejected) {
  Study s = MakeStudy(4, {"Noisy"});
  s.qualification[0].clip_id = s.clips[1].clip_id;
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);
  s = MakeStudy(4, {"Noisy"});
  s.qualification[0].path = s.clips[2].path;
  EXPECT_THROW(ValidateStudy(s, false), InvalidArgumentError);
}

TEST(Study, MissingFilesAreInputErrors) {
  EXPECT_THROW(ValidateStudy(MakeStudy(2, {"Noisy"}), true), InputDataError);
}

TEST(Study, ConditionsAreSortedAndUnique) {
  EXPECT_EQ(MakeStudy(9, {"Wiener", "Noisy", "MethodX"}).Conditions(),
            (std::vector<std::string>{"MethodX", "Noisy", "Wiener"}));
}

TEST(StudySpec, ManifestWithTwoEnhancedConditionsGivesThirtyItems) {
  std::vector<synth::MixtureRecord> manifest;
  for (int i = 0; i < 10; ++i) {
    synth::MixtureRecord r;
    r.clip_id = "c" + std::to_string(i);
    r.noisy_path = "noisy/c" + std::to_string(i) + ".wav";
    r.clean_path = "clean/c" + std::to_string(i) + ".wav";
    r.noise_path = "noise/c" + std::to_string(i) + ".wav";
    r.noise_type = i % 2 ? "babble" : "hum";
    r.speaker_id = "spk0";
    r.segment_id = "seg" + std::to_string(i);
    r.duration_s = 1.0;
    manifest.push_back(r);
  }
  nlohmann::json spec = {
      {"study_id", "demo"},
      {"manifest_tsv", synth::FormatManifest(manifest)},
      {"manifest_dir", "mix"},
      {"conditions", {{"Wiener", "wiener"}, {"MethodX", "x"}}},
      {"qualification",
       {{{"clip_id", "q0"}, {"expected", 5}, {"path", "q/0.wav"}},
        {{"clip_id", "q1"}, {"expected", 1}, {"path", "q/1.wav"}}}}};
  const Study s = ParseStudySpec(spec.dump(), "/base");
  EXPECT_EQ(s.clips.size(), 30u);
  EXPECT_EQ(s.Conditions(), (std::vector<std::string>{"MethodX", "Noisy", "Wiener"}));
  EXPECT_EQ(s.clips[0].path, "/base/mix/noisy/c0.wav");
  EXPECT_EQ(s.training.size(), 5u);
  for (const auto &t : s.training) EXPECT_EQ(t.clip_id.rfind("training/", 0), 0u);
  EXPECT_EQ(s.qualification[1].path, "/base/q/1.wav");
  EXPECT_NO_THROW(ValidateStudy(s, false));
}

TEST(StudySpec, ExplicitClipsAndConfig) {
  const char *text = R"({"study_id":"s1","config":{"ratings_per_clip_target":3},
    "clips":[{"clip_id":"a","condition":"Noisy","path":"/x/a.wav"}],
    "qualification":[{"clip_id":"q0","expected":5,"path":"q0.wav"},
                     {"clip_id":"q1","expected":1,"path":"q1.wav"}],
    "training":[]})";
  const Study s = ParseStudySpec(text, "/b");
  EXPECT_EQ(s.study_id, "s1");
  EXPECT_EQ(s.config.ratings_per_clip_target, 3);
  EXPECT_EQ(s.clips.at(0).path, "/x/a.wav");
  EXPECT_TRUE(s.training.empty());
}

TEST(StudySpec, Errors) {
  EXPECT_THROW(ParseStudySpec("{", "."), InputDataError);
  EXPECT_THROW(ParseStudySpec("[]", "."), InputDataError);
  EXPECT_THROW(ParseStudySpec(R"({"study_id":"x"})", "."), InputDataError);
  EXPECT_THROW(ParseStudySpec(R"({"config":{"bogus":1},"clips":[]})", "."), InputDataError);
  EXPECT_THROW(ParseStudySpec(R"({"clips":[{"clip_id":"a"}]})", "."), InputDataError);
}

TEST(StudySpec, JsonRoundTrip) {
  const Study s = MakeStudy(5, {"Noisy", "Wiener"});
  EXPECT_EQ(ParseStudySpec(StudyToJson(s), "/unused"), s);
}

// ---- events ---------------------------------------------------------------

TEST(Events, EveryTypeRoundTrips) {
  StudyCreated created{MakeStudy(3, {"Noisy"}), {{"ab", "Noisy/clip_0000"}}, 5};
  std::vector<Event> events = {
      created,
      JudgeJoined{"j1", 6},
      ClipAssigned{"j1", "Noisy/clip_0000", 7},
      TrainingRated{"j1", "train_0", 4, 8},
      QualificationSubmitted{"j1", {{"qual_00", 5}, {"qual_01", 2}}, 2, 2, true, 9},
      RatingSubmitted{17, "j1", "Noisy/clip_0000", 3, 10},
      JudgeBlocked{"j1", "spam", 11}};
  std::set<std::string> names;
  for (const auto &e : events) {
    const std::string line = EncodeEvent(e);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    const Event back = DecodeEvent(line);
    EXPECT_EQ(back.index(), e.index());
    EXPECT_EQ(EncodeEvent(back), line);
    names.insert(EventTypeName(e));
  }
  EXPECT_EQ(names.size(), events.size());
  const auto r = std::get<RatingSubmitted>(DecodeEvent(EncodeEvent(events[5])));
  EXPECT_EQ(r.rating_id, 17u);
  EXPECT_EQ(r.score, 3);
  EXPECT_EQ(std::get<StudyCreated>(DecodeEvent(EncodeEvent(created))).study, created.study);
}

TEST(Events, MalformedLinesThrow) {
  EXPECT_THROW(DecodeEvent("not json"), InputDataError);
  EXPECT_THROW(DecodeEvent(R"({"type":"Nope"})"), InputDataError);
}

TEST(EventLog, TruncatedFinalLineIsDropped) {
  const std::string a = EncodeEvent(JudgeJoined{"a", 1});
  const std::string b = EncodeEvent(JudgeJoined{"b", 2});
  const auto events = ParseEventLog(a + "\n" + b.substr(0, b.size() / 2), "log");
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(std::get<JudgeJoined>(events[0]).judge_id, "a");
}

TEST(EventLog, MalformedMiddleLineNamesTheLine) {
  const std::string a = EncodeEvent(JudgeJoined{"a", 1});
  try {
    ParseEventLog(a + "\n{oops\n" + a + "\n", "events.jsonl");
    FAIL();
  } catch (const InputDataError &e) {
    EXPECT_NE(std::string(e.what()).find("events.jsonl:2"), std::string::npos);
  }
}

TEST(EventLog, FileAppendAndRead) {
  testing::TempDir dir;
  {
    FileEventLog log(dir / "e.jsonl");
    log.Append(JudgeJoined{"a", 1});
    log.Append(JudgeBlocked{"a", "manual", 2});
  }
  {
    FileEventLog log(dir / "e.jsonl");
    log.Append(JudgeJoined{"b", 3});
  }
  const auto events = ReadEventLog(dir / "e.jsonl");
  ASSERT_EQ(events.size(), 3u);
  EXPECT_EQ(FormatEventLog(events), testing::ReadAll(dir / "e.jsonl"));
  EXPECT_THROW(ReadEventLog(dir / "missing.jsonl"), FileNotFoundError);
}

// ---- lifecycle ------------------------------------------------------------

class EngineTest : public ::testing::Test {
 protected:
  void Init(Study s) {
    engine_ = StudyEngine::Create(std::move(s), &log_, clock_.AsClock(), testing::CountingTokens());
  }
  MemoryEventLog log_;
  testing::ManualClock clock_;
  std::unique_ptr<StudyEngine> engine_;
};

TEST_F(EngineTest, NewJudgeStartsWithFirstTrainingClip) {
  Init(MakeStudy(4, {"Noisy"}));
  const Assignment a = engine_->NextAssignment("j");
  EXPECT_EQ(a.phase, Directive::kTraining);
  ASSERT_TRUE(a.clip);
  EXPECT_EQ(a.clip->clip_id, "train_0");
  EXPECT_EQ(a.progress, 0u);
  EXPECT_EQ(a.total, 5u);
  EXPECT_EQ(engine_->ClipForToken(a.clip->token), "train_0");
  EXPECT_EQ(engine_->Judge("j")->phase, JudgePhase::kNew);
}

TEST_F(EngineTest, TokensAreUniqueAndCoverEveryClip) {
  Init(MakeStudy(4, {"Noisy"}));
  EXPECT_EQ(engine_->tokens().size(), 4u + 10u + 5u);
  std::set<std::string> ids;
  for (const auto &[token, id] : engine_->tokens()) {
    EXPECT_EQ(token.size(), 32u);
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), engine_->tokens().size());
  EXPECT_FALSE(engine_->ClipForToken("nope"));
  EXPECT_EQ(engine_->PathForClip("qual_03"), "/data/qual/3.wav");
}

TEST_F(EngineTest, FullLifecycle) {
  Init(MakeStudy(4, {"Noisy"}));
  const std::string clip0 = engine_->study().clips[0].clip_id;
  EXPECT_EQ(engine_->SubmitRating("j", clip0, 3).status, SubmitStatus::kUnknownJudge);

  for (int i = 0; i < 5; ++i) {
    const Assignment a = engine_->NextAssignment("j");
    ASSERT_EQ(a.phase, Directive::kTraining);
    EXPECT_EQ(a.progress, static_cast<std::size_t>(i));
    EXPECT_EQ(engine_->SubmitRating("j", clip0, 3).status, SubmitStatus::kNotQualified);
    const SubmitResult r = engine_->SubmitRating("j", a.clip->clip_id, 2);
    EXPECT_TRUE(r.accepted());
    EXPECT_TRUE(r.training);
    EXPECT_EQ(engine_->SubmitRating("j", a.clip->clip_id, 2).status, SubmitStatus::kDuplicate);
  }
  EXPECT_EQ(engine_->Judge("j")->phase, JudgePhase::kTrained);
  EXPECT_TRUE(engine_->Ratings().empty());

  const Assignment q = engine_->NextAssignment("j");
  ASSERT_EQ(q.phase, Directive::kQualification);
  std::set<std::string> qids;
  for (const auto &c : q.qualification) qids.insert(c.clip_id);
  EXPECT_EQ(qids.size(), 10u);
  EXPECT_EQ(engine_->SubmitRating("j", "qual_00", 5).status, SubmitStatus::kWrongPhase);
  EXPECT_EQ(engine_->SubmitRating("j", clip0, 3).status, SubmitStatus::kNotQualified);

  const QualificationResult qr = engine_->SubmitQualification("j", CorrectAnswers(engine_->study()));
  EXPECT_TRUE(qr.passed);
  EXPECT_EQ(qr.right, 10);
  EXPECT_EQ(engine_->Judge("j")->phase, JudgePhase::kQualified);
  EXPECT_EQ(engine_->SubmitQualification("j", CorrectAnswers(engine_->study())).status,
            SubmitStatus::kWrongPhase);

  const Assignment r = engine_->NextAssignment("j");
  ASSERT_EQ(r.phase, Directive::kRate);
  EXPECT_EQ(engine_->SubmitRating("j", "train_1", 3).status, SubmitStatus::kDuplicate);
  const SubmitResult sr = engine_->SubmitRating("j", r.clip->clip_id, 4);
  EXPECT_TRUE(sr.accepted());
  EXPECT_FALSE(sr.training);
  EXPECT_EQ(sr.rating_id, 1u);
  EXPECT_EQ(engine_->IncludedCount(r.clip->clip_id), 1u);
}

TEST_F(EngineTest, QualificationOrderIsAPerJudgePermutation) {
  Init(MakeStudy(4, {"Noisy"}));
  auto order = [&](const std::string &judge) {
    FinishTraining(*engine_, judge);
    std::vector<std::string> ids;
    for (const auto &c : engine_->NextAssignment(judge).qualification) ids.push_back(c.clip_id);
    return ids;
  };
  const auto a = order("alice"), b = order("bob");
  EXPECT_EQ(order("alice"), a);
  EXPECT_NE(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> expected;
  for (const auto &q : engine_->study().qualification) expected.push_back(q.clip_id);
  EXPECT_EQ(sorted, expected);
}

TEST_F(EngineTest, EmptyTrainingSetSkipsToQualification) {
  Study s = MakeStudy(2, {"Noisy"});
  s.training.clear();
  Init(s);
  EXPECT_EQ(engine_->NextAssignment("j").phase, Directive::kQualification);
}

// Builds a log in which seed judges already rated the given clips.
std::vector<Event> SeededLog(Study s, const std::map<std::string, int> &counts) {
  s.training.clear();
  MemoryEventLog log;
  StudyEngine::Create(s, &log, [] { return 0; }, testing::CountingTokens());
  std::vector<Event> events = log.events();
  int max = 0;
  for (const auto &[clip, n] : counts) max = std::max(max, n);
  std::uint64_t rating_id = 0;
  for (int k = 0; k < max; ++k) {
    const std::string judge = "seed" + std::to_string(k);
    events.push_back(JudgeJoined{judge, 0});
    events.push_back(QualificationSubmitted{judge, CorrectAnswers(s), 10, 10, true, 0});
    for (const auto &[clip, n] : counts) {
      if (k >= n) continue;
      events.push_back(ClipAssigned{judge, clip, 0});
      events.push_back(RatingSubmitted{++rating_id, judge, clip, 3, 0});
    }
  }
  return events;
}

TEST_F(EngineTest, FewestRatingsFirst) {
  Study s = MakeStudy(2, {"Noisy"});
  const std::string a = s.clips[0].clip_id, b = s.clips[1].clip_id;
  const auto engine = StudyEngine::Replay(SeededLog(s, {{a, 7}, {b, 3}}), &log_);
  EXPECT_EQ(engine->IncludedCount(a), 7u);
  EXPECT_EQ(engine->IncludedCount(b), 3u);
  ASSERT_EQ(engine->NextAssignment("fresh").phase, Directive::kQualification);
  ASSERT_TRUE(engine->SubmitQualification("fresh", CorrectAnswers(s)).passed);
  const Assignment next = engine->NextAssignment("fresh");
  ASSERT_EQ(next.phase, Directive::kRate);
  EXPECT_EQ(next.clip->clip_id, b);
}

TEST_F(EngineTest, TiesGoToLowestClipId) {
  Study s = MakeStudy(3, {"Noisy"});
  s.training.clear();
  Init(s);
  Qualify(*engine_, "j");
  EXPECT_EQ(engine_->NextAssignment("j").clip->clip_id, s.clips[0].clip_id);
}

TEST_F(EngineTest, OutstandingAssignmentIsRepeatedUntilAnswered) {
  Init(MakeStudy(3, {"Noisy"}));
  Qualify(*engine_, "j");
  const auto first = engine_->NextAssignment("j");
  EXPECT_EQ(engine_->NextAssignment("j").clip, first.clip);
  ASSERT_TRUE(engine_->SubmitRating("j", first.clip->clip_id, 3).accepted());
  EXPECT_NE(engine_->NextAssignment("j").clip, first.clip);
}

TEST_F(EngineTest, NoWorkWhenEverythingRatedOrAtTarget) {
  Study s = MakeStudy(2, {"Noisy"});
  s.config.ratings_per_clip_target = 1;
  Init(s);
  testing::JudgeScript one;
  one.max_ratings = 1;
  EXPECT_EQ(testing::RunJudge(*engine_, "a", one), Directive::kRate);
  clock_.now += 600'000;  // release the lease "a" left behind
  EXPECT_EQ(testing::RunJudge(*engine_, "b"), Directive::kDone);
  EXPECT_EQ(engine_->Judge("b")->rated.size(), 1u);
  EXPECT_EQ(testing::RunJudge(*engine_, "c"), Directive::kDone);
  EXPECT_EQ(engine_->Judge("c")->rated.size(), 0u);

  Init(MakeStudy(3, {"Noisy"}));
  EXPECT_EQ(testing::RunJudge(*engine_, "solo"), Directive::kDone);
  EXPECT_EQ(engine_->Judge("solo")->rated.size(), 3u);
}

TEST_F(EngineTest, LeasesReserveClipsUntilTheyExpire) {
  Study s = MakeStudy(1, {"Noisy"});
  s.config.ratings_per_clip_target = 1;
  s.config.assignment_lease_s = 60;
  Init(s);
  Qualify(*engine_, "a");
  Qualify(*engine_, "b");
  ASSERT_EQ(engine_->NextAssignment("a").phase, Directive::kRate);
  EXPECT_EQ(engine_->NextAssignment("b").phase, Directive::kDone);
  clock_.now += 60'000;
  const Assignment b = engine_->NextAssignment("b");
  ASSERT_EQ(b.phase, Directive::kRate);
  ASSERT_TRUE(engine_->SubmitRating("b", b.clip->clip_id, 3).accepted());
  // The expired lease still lets "a" answer; the target is a soft minimum.
  EXPECT_TRUE(engine_->SubmitRating("a", b.clip->clip_id, 3).accepted());
  EXPECT_EQ(engine_->IncludedCount(b.clip->clip_id), 2u);
}

TEST_F(EngineTest, SubmitRejections) {
  Init(MakeStudy(3, {"Noisy"}));
  Qualify(*engine_, "j");
  const Assignment a = engine_->NextAssignment("j");
  const std::string other = a.clip->clip_id == engine_->study().clips[2].clip_id
                                ? engine_->study().clips[1].clip_id
                                : engine_->study().clips[2].clip_id;
  EXPECT_EQ(engine_->SubmitRating("j", a.clip->clip_id, 6).status, SubmitStatus::kOutOfRange);
  EXPECT_EQ(engine_->SubmitRating("j", a.clip->clip_id, 0).status, SubmitStatus::kOutOfRange);
  EXPECT_EQ(engine_->SubmitRating("j", other, 3).status, SubmitStatus::kNotAssigned);
  EXPECT_EQ(engine_->SubmitRating("j", "missing", 3).status, SubmitStatus::kUnknownClip);
  EXPECT_TRUE(engine_->SubmitRating("j", a.clip->clip_id, 5).accepted());
  EXPECT_EQ(engine_->SubmitRating("j", a.clip->clip_id, 5).status, SubmitStatus::kDuplicate);
  EXPECT_EQ(engine_->Ratings().size(), 1u);
}

// ---- qualification --------------------------------------------------------

TEST_F(EngineTest, EightOfTenPassesSevenFails) {
  Init(MakeStudy(3, {"Noisy"}));
  FinishTraining(*engine_, "eight");
  FinishTraining(*engine_, "seven");
  const auto pass = engine_->SubmitQualification("eight", AnswersWithRight(engine_->study(), 8));
  EXPECT_TRUE(pass.passed);
  EXPECT_EQ(pass.right, 8);
  EXPECT_DOUBLE_EQ(pass.score, 0.8);
  const auto fail = engine_->SubmitQualification("seven", AnswersWithRight(engine_->study(), 7));
  EXPECT_FALSE(fail.passed);
  EXPECT_FALSE(fail.blocked);
  EXPECT_EQ(fail.attempts, 1);
  EXPECT_EQ(engine_->Judge("seven")->phase, JudgePhase::kTrained);
}

TEST_F(EngineTest, RightnessTolerance) {
  Study s = MakeStudy(2, {"Noisy"}, 2);
  s.config.qualification_pass_fraction = 1.0;
  Init(s);
  auto attempt = [&](const std::string &judge, int for5, int for1) {
    FinishTraining(*engine_, judge);
    return engine_->SubmitQualification(judge, {{"qual_00", for5}, {"qual_01", for1}}).right;
  };
  EXPECT_EQ(attempt("a", 4, 2), 2);
  EXPECT_EQ(attempt("b", 3, 3), 0);
  EXPECT_EQ(attempt("c", 5, 1), 2);
}

TEST_F(EngineTest, QualificationErrors) {
  Init(MakeStudy(3, {"Noisy"}));
  EXPECT_EQ(engine_->SubmitQualification("ghost", {}).status, SubmitStatus::kUnknownJudge);
  engine_->NextAssignment("j");
  EXPECT_EQ(engine_->SubmitQualification("j", CorrectAnswers(engine_->study())).status,
            SubmitStatus::kWrongPhase);
  FinishTraining(*engine_, "j");
  auto answers = CorrectAnswers(engine_->study());
  answers.pop_back();
  EXPECT_EQ(engine_->SubmitQualification("j", answers).status, SubmitStatus::kIncomplete);
  answers.push_back(answers.front());
  EXPECT_EQ(engine_->SubmitQualification("j", answers).status, SubmitStatus::kDuplicate);
  answers.back() = {"Noisy/clip_0000", 3};
  EXPECT_EQ(engine_->SubmitQualification("j", answers).status, SubmitStatus::kUnknownClip);
  answers.back() = {engine_->study().qualification.back().clip_id, 9};
  EXPECT_EQ(engine_->SubmitQualification("j", answers).status, SubmitStatus::kOutOfRange);
  EXPECT_EQ(engine_->Judge("j")->qualification_attempts, 0);
}

TEST_F(EngineTest, OneRetryThenBlocked) {
  Init(MakeStudy(3, {"Noisy"}));
  FinishTraining(*engine_, "retry");
  EXPECT_FALSE(engine_->SubmitQualification("retry", AnswersWithRight(engine_->study(), 2)).passed);
  EXPECT_EQ(engine_->NextAssignment("retry").phase, Directive::kQualification);
  EXPECT_TRUE(engine_->SubmitQualification("retry", AnswersWithRight(engine_->study(), 9)).passed);

  FinishTraining(*engine_, "bad");
  engine_->SubmitQualification("bad", AnswersWithRight(engine_->study(), 0));
  const auto second = engine_->SubmitQualification("bad", AnswersWithRight(engine_->study(), 7));
  EXPECT_FALSE(second.passed);
  EXPECT_TRUE(second.blocked);
  EXPECT_EQ(second.attempts, 2);
  EXPECT_EQ(engine_->Judge("bad")->phase, JudgePhase::kBlocked);
  EXPECT_EQ(engine_->Judge("bad")->block_reason, "qualification");
  EXPECT_EQ(engine_->NextAssignment("bad").phase, Directive::kBlocked);
  EXPECT_EQ(engine_->SubmitQualification("bad", CorrectAnswers(engine_->study())).status,
            SubmitStatus::kBlocked);
}

TEST_F(EngineTest, QualificationIgnoresAnswerOrder) {
  Init(MakeStudy(3, {"Noisy"}));
  auto answers = AnswersWithRight(engine_->study(), 8);
  FinishTraining(*engine_, "fwd");
  FinishTraining(*engine_, "rev");
  const auto f = engine_->SubmitQualification("fwd", answers);
  std::reverse(answers.begin(), answers.end());
  const auto r = engine_->SubmitQualification("rev", answers);
  EXPECT_EQ(f.passed, r.passed);
  EXPECT_EQ(f.right, r.right);
}

// ---- spam -----------------------------------------------------------------

class SpamTest : public EngineTest {
 protected:
  // Four peers rate every clip: 1, 2, 1, 2 (peer mean 1.5) or all `flat`.
  void Seed(int clips, int flat = 0) {
    Study s = MakeStudy(clips, {"Noisy"});
    s.config.ratings_per_clip_target = 100;
    Init(s);
    for (int p = 0; p < 4; ++p) {
      const int score = flat ? flat : 1 + p % 2;
      testing::JudgeScript script;
      script.rate = [score](const std::string &) { return score; };
      ASSERT_EQ(testing::RunJudge(*engine_, "peer" + std::to_string(p), script), Directive::kDone);
    }
  }
};

TEST_F(SpamTest, RatingThePeerMeanIsOk) {
  Seed(25, 3);
  testing::JudgeScript script;
  script.rate = [](const std::string &) { return 3; };
  EXPECT_EQ(testing::RunJudge(*engine_, "honest", script), Directive::kDone);
  const SpamCheckResult r = engine_->SpamCheck("honest");
  EXPECT_EQ(r.status, SpamStatus::kOk);
  EXPECT_EQ(r.mean_abs_deviation, 0.0);
  EXPECT_EQ(r.eligible, 20u);
}

TEST_F(SpamTest, RatingFiveAgainstPeerMeanOneAndAHalfBlocks) {
  Seed(25);
  Qualify(*engine_, "spam");
  for (int i = 1; i <= 20; ++i) {
    const Assignment a = engine_->NextAssignment("spam");
    ASSERT_EQ(a.phase, Directive::kRate);
    const SubmitResult r = engine_->SubmitRating("spam", a.clip->clip_id, 5);
    ASSERT_TRUE(r.accepted());
    EXPECT_DOUBLE_EQ(r.spam.mean_abs_deviation, 3.5);
    EXPECT_EQ(r.spam.status, i < 20 ? SpamStatus::kFlagged : SpamStatus::kBlocked);
  }
  EXPECT_EQ(engine_->Judge("spam")->block_reason, "spam");
  EXPECT_EQ(engine_->NextAssignment("spam").phase, Directive::kBlocked);
  for (const auto &c : engine_->study().clips) EXPECT_EQ(engine_->IncludedCount(c.clip_id), 4u);
  for (const auto &r : engine_->Ratings()) EXPECT_EQ(r.excluded, r.judge_id == "spam");
  const MosReport report = engine_->Report(false);
  for (const auto &c : report.clips) EXPECT_DOUBLE_EQ(c.mos, 1.5);
}

TEST_F(SpamTest, TooFewPeersNeverCounts) {
  Study s = MakeStudy(25, {"Noisy"});
  Init(s);
  testing::JudgeScript low;
  low.rate = [](const std::string &) { return 1; };
  testing::RunJudge(*engine_, "p0", low);
  testing::RunJudge(*engine_, "p1", low);
  testing::JudgeScript high;
  high.rate = [](const std::string &) { return 5; };
  EXPECT_EQ(testing::RunJudge(*engine_, "lone", high), Directive::kDone);
  EXPECT_EQ(engine_->SpamCheck("lone").eligible, 0u);
  EXPECT_EQ(engine_->SpamCheck("lone").status, SpamStatus::kOk);
}

TEST(SpamMonteCarlo, HonestJudgesRarelyBlocked) {
  // Clip quality q ~ U[1.5, 4.5]; every judge reports round(q + N(0, 0.5)).
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> quality(1.5, 4.5);
  std::normal_distribution<double> noise(0.0, 0.5);
  int blocked = 0;
  const int kSims = 1000;
  for (int sim = 0; sim < kSims; ++sim) {
    Study s = MakeStudy(20, {"Noisy"});
    s.training.clear();
    std::map<std::string, double> q;
    for (const auto &c : s.clips) q[c.clip_id] = quality(rng);
    const auto engine = StudyEngine::Create(s, nullptr, [] { return 0; }, testing::CountingTokens());
    testing::JudgeScript script;
    script.rate = [&](const std::string &clip) {
      return static_cast<int>(std::clamp(std::lround(q[clip] + noise(rng)), 1L, 5L));
    };
    for (int p = 0; p < 9; ++p) testing::RunJudge(*engine, "peer" + std::to_string(p), script);
    if (testing::RunJudge(*engine, "honest", script) == Directive::kBlocked) ++blocked;
    ASSERT_EQ(engine->SpamCheck("honest").eligible, 20u);
  }
  EXPECT_LT(blocked, kSims / 100);
}

// ---- aggregation ----------------------------------------------------------

Study OneCondition(int clips) {
  Study s = MakeStudy(clips, {"Noisy"});
  return s;
}

TEST(Aggregate, FiveEqualScores) {
  const Study s = OneCondition(1);
  std::vector<RatingRecord> r;
  for (int j = 0; j < 5; ++j) r.push_back(Rec("j" + std::to_string(j), s.clips[0].clip_id, 3));
  const MosReport m = AggregateMos(s, r);
  ASSERT_EQ(m.clips.size(), 1u);
  EXPECT_EQ(m.clips[0].mos, 3.0);
  EXPECT_EQ(m.clips[0].n, 5u);
  EXPECT_TRUE(m.clips[0].below_target);
  ASSERT_EQ(m.conditions.size(), 1u);
  EXPECT_FALSE(m.conditions[0].ci_defined);
  EXPECT_EQ(nlohmann::json::parse(ReportToJson(m))["conditions"][0]["ci95"], nullptr);
}

TEST(Aggregate, TwoClipsAveraged) {
  const Study s = OneCondition(2);
  std::vector<RatingRecord> r = {Rec("a", s.clips[0].clip_id, 2), Rec("a", s.clips[1].clip_id, 4)};
  const MosReport m = AggregateMos(s, r);
  EXPECT_EQ(m.conditions.at(0).mos, 3.0);
  EXPECT_TRUE(m.conditions.at(0).ci_defined);
  EXPECT_NEAR(m.conditions.at(0).ci95, 1.96 * std::sqrt(2.0) / std::sqrt(2.0), 1e-12);
}

TEST(Aggregate, OneToFive) {
  const Study one = OneCondition(1);
  std::vector<RatingRecord> r;
  for (int k = 1; k <= 5; ++k) r.push_back(Rec("j" + std::to_string(k), one.clips[0].clip_id, k));
  EXPECT_EQ(AggregateMos(one, r).clips[0].mos, 3.0);

  const Study five = OneCondition(5);
  r.clear();
  for (int k = 1; k <= 5; ++k) r.push_back(Rec("j", five.clips[k - 1].clip_id, k));
  const ConditionMos c = AggregateMos(five, r).conditions.at(0);
  EXPECT_EQ(c.mos, 3.0);
  EXPECT_NEAR(c.ci95, 1.96 * std::sqrt(2.5) / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(c.ratings, 5u);
}

TEST(Aggregate, ExcludedAndForeignRatingsIgnored) {
  const Study s = OneCondition(2);
  std::vector<RatingRecord> r = {Rec("a", s.clips[0].clip_id, 4), Rec("b", s.clips[0].clip_id, 1, true),
                                 Rec("a", "train_0", 1)};
  const MosReport m = AggregateMos(s, r);
  ASSERT_EQ(m.clips.size(), 1u);
  EXPECT_EQ(m.clips[0].mos, 4.0);
  EXPECT_EQ(m.unrated_clips, std::vector<std::string>{s.clips[1].clip_id});
}

TEST(Aggregate, EmptyStudyIsAnError) {
  const Study s = OneCondition(2);
  EXPECT_THROW(AggregateMos(s, {}), InputDataError);
  std::vector<RatingRecord> r = {Rec("a", s.clips[0].clip_id, 4, true)};
  EXPECT_THROW(AggregateMos(s, r), InputDataError);
}

TEST(Aggregate, NoiseTypeSliceAndHistogram) {
  const Study s = MakeStudy(4, {"Noisy"});  // noise types alternate hum, babble
  std::vector<RatingRecord> r = {Rec("a", s.clips[0].clip_id, 1), Rec("a", s.clips[1].clip_id, 5),
                                 Rec("a", s.clips[2].clip_id, 2), Rec("a", s.clips[3].clip_id, 4)};
  const MosReport m = AggregateMos(s, r);
  ASSERT_EQ(m.noise_types.size(), 2u);
  EXPECT_EQ(m.noise_types[0].noise_type, "babble");
  EXPECT_EQ(m.noise_types[0].mos, 4.5);
  EXPECT_EQ(m.noise_types[1].mos, 1.5);
  ASSERT_EQ(m.histograms.size(), 1u);
  const auto &h = m.histograms[0].counts;
  EXPECT_EQ(h[0], 1u);
  EXPECT_EQ(h[4], 1u);
  EXPECT_EQ(h[12], 1u);
  EXPECT_EQ(h[15], 1u);
  std::size_t total = 0;
  for (auto c : h) total += c;
  EXPECT_EQ(total, 4u);
}

TEST(Aggregate, HistogramBinEdges) {
  EXPECT_EQ(HistogramBin(1.0), 0u);
  EXPECT_EQ(HistogramBin(1.2499), 0u);
  EXPECT_EQ(HistogramBin(1.25), 1u);
  EXPECT_EQ(HistogramBin(4.9), 15u);
  EXPECT_EQ(HistogramBin(5.0), 15u);
}

TEST(Aggregate, OracleAgreesOnRandomSimulation) {
  MemoryEventLog log;
  testing::ManualClock clock;
  Study s = MakeStudy(30, {"Noisy", "Wiener", "MethodX"});
  s.config.ratings_per_clip_target = 6;
  auto engine = StudyEngine::Create(s, &log, clock.AsClock(), testing::CountingTokens());
  std::mt19937 rng(7);
  for (int j = 0; j < 8; ++j) {
    testing::JudgeScript script;
    script.rate = [&](const std::string &) { return 1 + static_cast<int>(rng() % 5); };
    testing::RunJudge(*engine, "judge" + std::to_string(j), script);
  }
  engine->BlockJudge("judge3", "manual");
  const auto oracle = testing::BruteForceMos(log.events());
  const MosReport m = engine->Report(false);
  ASSERT_EQ(m.clips.size(), oracle.clips.size());
  for (const auto &c : m.clips) {
    EXPECT_EQ(c.mos, oracle.clips.at(c.clip_id).mos);
    EXPECT_EQ(c.n, oracle.clips.at(c.clip_id).n);
  }
  for (const auto &c : m.conditions) {
    EXPECT_NEAR(c.mos, oracle.conditions.at(c.condition).mos, 1e-12);
    EXPECT_NEAR(c.ci95, oracle.conditions.at(c.condition).ci95, 1e-12);
  }
  EXPECT_EQ(oracle.excluded_judges.count("judge3"), 1u);
}

// ---- normalization --------------------------------------------------------

TEST(Normalize, TwoPointFitMatchesLinearSolve) {
  const AnchorFit fit = FitAnchorMap({2.5, 4.5}, {2.0, 3.0});
  // [2.5 1; 4.5 1] [a b]' = [2 3]' by Cramer's rule.
  const double det = 2.5 * 1 - 1 * 4.5;
  const double a = (2.0 * 1 - 1 * 3.0) / det;
  const double b = (2.5 * 3.0 - 4.5 * 2.0) / det;
  EXPECT_NEAR(fit.a, a, 1e-12);
  EXPECT_NEAR(fit.b, b, 1e-12);
  EXPECT_NEAR(fit.a, 0.5, 1e-12);
  EXPECT_NEAR(fit.b, 0.75, 1e-12);
  EXPECT_FALSE(fit.offset_only);
}

TEST(Normalize, EqualReferenceAnchorsShiftOnly) {
  const AnchorFit fit = FitAnchorMap({3.0, 3.0}, {2.45, 2.45});
  EXPECT_TRUE(fit.offset_only);
  EXPECT_EQ(fit.a, 1.0);
  EXPECT_NEAR(fit.b, -0.55, 1e-12);
  EXPECT_NEAR(ApplyAnchorMap(fit, 3.7), 3.15, 1e-12);

  const AnchorFit measured_equal = FitAnchorMap({3.0, 3.0}, {2.0, 3.0});
  EXPECT_TRUE(measured_equal.offset_only);
  EXPECT_NEAR(measured_equal.b, -0.5, 1e-12);
}

TEST(Normalize, IdentityWhenAnchorsMatch) {
  const AnchorFit fit = FitAnchorMap({2.2, 3.4}, {2.2, 3.4});
  for (double x : {1.0, 2.2, 3.0, 4.9}) EXPECT_NEAR(ApplyAnchorMap(fit, x), x, 1e-12);
}

TEST(Normalize, ClampsToScale) {
  const AnchorFit fit{2.0, 0.0, false};
  EXPECT_EQ(ApplyAnchorMap(fit, 4.0), 5.0);
  EXPECT_EQ(ApplyAnchorMap(AnchorFit{1.0, -3.0, true}, 2.0), 1.0);
}

TEST(Normalize, ReportNeedsBothAnchors) {
  const Study s = MakeStudy(4, {"Noisy", "Wiener"});
  std::vector<RatingRecord> r;
  for (const auto &c : s.clips) r.push_back(Rec("a", c.clip_id, c.condition == "Noisy" ? 2 : 4));
  MosReport m = AggregateMos(s, r);
  NormalizeToReference(m, "Noisy", "Wiener", {2.45, 2.45});
  ASSERT_TRUE(m.anchor_fit);
  ASSERT_EQ(m.normalized.size(), 2u);
  EXPECT_NEAR(m.normalized[0].normalized_mos, 1.45, 1e-12);
  EXPECT_NEAR(m.normalized[1].normalized_mos, 3.45, 1e-12);

  MosReport only_noisy = AggregateMos(s, std::vector<RatingRecord>{r[0]});
  EXPECT_THROW(NormalizeToReference(only_noisy, "Noisy", "Wiener", {2.45, 2.45}), InputDataError);
}

// ---- report rendering -----------------------------------------------------

TEST(ReportIo, DeterministicAndComplete) {
  const Study s = MakeStudy(6, {"Noisy", "Wiener"});
  std::vector<RatingRecord> r;
  for (const auto &c : s.clips) r.push_back(Rec("a", c.clip_id, c.clip_id.size() % 5 + 1));
  MosReport m = AggregateMos(s, r);
  NormalizeToReference(m, "Noisy", "Wiener", {2.0, 3.0});
  const auto files = ReportFiles(m);
  EXPECT_EQ(files, ReportFiles(m));
  std::set<std::string> names;
  for (const auto &[name, body] : files) names.insert(name);
  EXPECT_EQ(names, (std::set<std::string>{"report.json", "summary.csv", "histogram.csv",
                                          "noise_type.csv", "clips.csv"}));
  const std::string summary = SummaryCsv(m);
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "condition,mos,ci95,clips,ratings,normalized_mos");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 3);
  const auto json = nlohmann::json::parse(ReportToJson(m));
  EXPECT_EQ(json["conditions"].size(), 2u);
  const std::string histogram = HistogramCsv(m), clips = ClipsCsv(m);
  EXPECT_EQ(std::count(histogram.begin(), histogram.end(), '\n'), 1 + 2 * 16);
  EXPECT_EQ(std::count(clips.begin(), clips.end(), '\n'), 1 + 6);
}

TEST(RatingsTable, ParsesAndValidates) {
  const auto ex = ParseRatingsTable(
      "judge_id,clip_id,condition,noise_type,score,excluded\n"
      "a,c1,Noisy,hum,2,0\n"
      "b,c1,Noisy,hum,4,\n"
      "a,c2,Wiener,hum,5,true\n",
      "t.csv");
  EXPECT_EQ(ex.study.clips.size(), 2u);
  ASSERT_EQ(ex.ratings.size(), 3u);
  EXPECT_TRUE(ex.ratings[2].excluded);

  EXPECT_THROW(ParseRatingsTable("clip_id,condition,score\n", "t"), InputDataError);
  EXPECT_THROW(ParseRatingsTable("clip_id,condition,score\nc,N,6\n", "t"), InputDataError);
  EXPECT_THROW(ParseRatingsTable("clip_id,condition,score\nc,N,x\n", "t"), InputDataError);
  EXPECT_THROW(ParseRatingsTable("clip_id,score\nc,3\n", "t"), InputDataError);
  EXPECT_THROW(ParseRatingsTable("judge_id,clip_id,condition,score\na,c,N,3\na,c,N,4\n", "t"),
               InputDataError);
  EXPECT_THROW(ParseRatingsTable("clip_id,condition,score\nc,N,3\nc,W,4\n", "t"), InputDataError);
}

// ---- replay ---------------------------------------------------------------

TEST(Replay, ReproducesStateAndReport) {
  MemoryEventLog log;
  testing::ManualClock clock;
  Study s = MakeStudy(12, {"Noisy", "Wiener"});
  s.config.ratings_per_clip_target = 3;
  auto engine = StudyEngine::Create(s, &log, clock.AsClock(), testing::CountingTokens());
  for (int j = 0; j < 5; ++j) {
    testing::JudgeScript script;
    script.rate = [j](const std::string &clip) { return 1 + static_cast<int>((clip.size() + j) % 5); };
    testing::RunJudge(*engine, "j" + std::to_string(j), script);
  }
  FinishTraining(*engine, "failing");
  engine->SubmitQualification("failing", AnswersWithRight(s, 0));
  engine->SubmitQualification("failing", AnswersWithRight(s, 0));

  const auto replica = StudyEngine::Replay(log.events(), nullptr);
  EXPECT_EQ(replica->event_count(), engine->event_count());
  EXPECT_EQ(replica->tokens(), engine->tokens());
  EXPECT_EQ(ReportToJson(replica->Report(true)), ReportToJson(engine->Report(true)));
  EXPECT_EQ(replica->Judge("failing")->phase, JudgePhase::kBlocked);
  EXPECT_EQ(replica->JudgeIds(), engine->JudgeIds());
}

TEST(Replay, RejectsBadLogs) {
  EXPECT_THROW(StudyEngine::Replay({}, nullptr), InputDataError);
  EXPECT_THROW(StudyEngine::Replay({JudgeJoined{"a", 0}}, nullptr), InputDataError);
  MemoryEventLog log;
  StudyEngine::Create(MakeStudy(2, {"Noisy"}), &log, [] { return 0; }, testing::CountingTokens());
  auto events = log.events();
  events.push_back(RatingSubmitted{1, "ghost", "Noisy/clip_0000", 3, 0});
  EXPECT_THROW(StudyEngine::Replay(events, nullptr), InputDataError);
}

}  // namespace
}  // namespace snsd::mos
