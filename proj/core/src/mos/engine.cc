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

#include "snsd/mos/engine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <type_traits>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/mos/normalize.h"
#include "snsd/synth/rng.h"

namespace snsd::mos {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t Fnv1a(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool ScoreInRange(int score) { return score >= 1 && score <= 5; }

}  // namespace

const char *JudgePhaseName(JudgePhase phase) {
  switch (phase) {
    case JudgePhase::kNew: return "new";
    case JudgePhase::kTrained: return "trained";
    case JudgePhase::kQualified: return "qualified";
    case JudgePhase::kBlocked: return "blocked";
  }
  return "?";
}

const char *DirectiveName(Directive directive) {
  switch (directive) {
    case Directive::kTraining: return "training";
    case Directive::kQualification: return "qualification";
    case Directive::kRate: return "rate";
    case Directive::kDone: return "done";
    case Directive::kBlocked: return "blocked";
  }
  return "?";
}

const char *SubmitStatusName(SubmitStatus status) {
  switch (status) {
    case SubmitStatus::kAccepted: return "accepted";
    case SubmitStatus::kDuplicate: return "duplicate";
    case SubmitStatus::kUnknownJudge: return "unknown_judge";
    case SubmitStatus::kUnknownClip: return "unknown_clip";
    case SubmitStatus::kNotQualified: return "not_qualified";
    case SubmitStatus::kNotAssigned: return "not_assigned";
    case SubmitStatus::kOutOfRange: return "out_of_range";
    case SubmitStatus::kBlocked: return "blocked";
    case SubmitStatus::kWrongPhase: return "wrong_phase";
    case SubmitStatus::kIncomplete: return "incomplete";
  }
  return "?";
}

const char *SpamStatusName(SpamStatus status) {
  switch (status) {
    case SpamStatus::kOk: return "ok";
    case SpamStatus::kFlagged: return "flagged";
    case SpamStatus::kBlocked: return "blocked";
  }
  return "?";
}

TimestampMs SystemClockMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string RandomToken() {
  thread_local std::random_device rd;
  std::uint64_t hi = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::uint64_t lo = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  return fmt::format("{:016x}{:016x}", hi, lo);
}

StudyEngine::StudyEngine(EventSink *sink, Clock clock) : sink_(sink), clock_(std::move(clock)) {}

std::unique_ptr<StudyEngine> StudyEngine::Create(Study study, EventSink *sink, Clock clock,
                                                 TokenSource tokens) {
  ValidateStudy(study, false);
  std::unique_ptr<StudyEngine> engine(new StudyEngine(sink, std::move(clock)));
  StudyCreated created;
  created.at = engine->Now();
  std::vector<std::string> ids;
  for (const auto &c : study.clips) ids.push_back(c.clip_id);
  for (const auto &c : study.training) ids.push_back(c.clip_id);
  for (const auto &c : study.qualification) ids.push_back(c.clip_id);
  std::sort(ids.begin(), ids.end());
  for (const auto &id : ids) {
    std::string token = tokens();
    while (created.tokens.count(token)) token = tokens();
    created.tokens.emplace(std::move(token), id);
  }
  created.study = std::move(study);
  std::lock_guard lock(engine->mu_);
  engine->Emit(std::move(created));
  return engine;
}

std::unique_ptr<StudyEngine> StudyEngine::Replay(const std::vector<Event> &events, EventSink *sink,
                                                 Clock clock) {
  if (events.empty() || !std::holds_alternative<StudyCreated>(events.front()))
    throw InputDataError("event log does not start with StudyCreated");
  std::unique_ptr<StudyEngine> engine(new StudyEngine(sink, std::move(clock)));
  std::lock_guard lock(engine->mu_);
  for (const auto &e : events) engine->Apply(e);
  return engine;
}

void StudyEngine::Emit(Event event) {
  if (sink_ != nullptr) sink_->Append(event);
  Apply(event);
}

void StudyEngine::ApplyCreated(const StudyCreated &e) {
  if (created_) throw InputDataError("duplicate StudyCreated event");
  ValidateStudy(e.study, false);
  study_ = e.study;
  for (const auto &c : study_.clips) clips_[c.clip_id] = {ClipKind::kRated, c.path, 0, {}};
  for (const auto &c : study_.training) clips_[c.clip_id] = {ClipKind::kTraining, c.path, 0, {}};
  for (const auto &c : study_.qualification)
    clips_[c.clip_id] = {ClipKind::kQualification, c.path, c.expected, {}};
  for (const auto &[token, id] : e.tokens) {
    auto it = clips_.find(id);
    if (it == clips_.end()) throw InputDataError("token for unknown clip " + id);
    it->second.token = token;
    tokens_[token] = id;
  }
  for (const auto &[id, info] : clips_)
    if (info.token.empty()) throw InputDataError("no token for clip " + id);
  for (const auto &c : study_.clips) tally_[c.clip_id];
  created_ = true;
}

JudgeState &StudyEngine::JudgeOrThrow(const std::string &judge_id) {
  auto it = judges_.find(judge_id);
  if (it == judges_.end()) throw InputDataError("event for unknown judge " + judge_id);
  return it->second;
}

void StudyEngine::Apply(const Event &event) {
  if (!created_ && !std::holds_alternative<StudyCreated>(event))
    throw InputDataError("event before StudyCreated");
  std::visit(
      Overloaded{
          [&](const StudyCreated &e) { ApplyCreated(e); },
          [&](const JudgeJoined &e) {
            if (judges_.count(e.judge_id)) throw InputDataError("judge joined twice: " + e.judge_id);
            JudgeState j;
            j.judge_id = e.judge_id;
            j.phase = study_.training.empty() ? JudgePhase::kTrained : JudgePhase::kNew;
            judges_.emplace(e.judge_id, std::move(j));
          },
          [&](const ClipAssigned &e) {
            JudgeState &j = JudgeOrThrow(e.judge_id);
            if (!tally_.count(e.clip_id)) throw InputDataError("assignment of unknown clip " + e.clip_id);
            j.assigned.insert(e.clip_id);
            j.outstanding = std::make_pair(e.clip_id, e.at);
          },
          [&](const TrainingRated &e) {
            JudgeState &j = JudgeOrThrow(e.judge_id);
            j.training_rated.insert(e.clip_id);
            if (j.phase == JudgePhase::kNew && j.training_rated.size() >= study_.training.size())
              j.phase = JudgePhase::kTrained;
          },
          [&](const QualificationSubmitted &e) {
            JudgeState &j = JudgeOrThrow(e.judge_id);
            ++j.qualification_attempts;
            j.qualification_score =
                e.total > 0 ? static_cast<double>(e.right) / static_cast<double>(e.total) : 0.0;
            if (e.passed && j.phase == JudgePhase::kTrained) j.phase = JudgePhase::kQualified;
          },
          [&](const RatingSubmitted &e) {
            JudgeState &j = JudgeOrThrow(e.judge_id);
            auto t = tally_.find(e.clip_id);
            if (t == tally_.end()) throw InputDataError("rating of unknown clip " + e.clip_id);
            RatingRecord r{e.rating_id, e.judge_id, e.clip_id, e.score, e.at,
                           j.phase == JudgePhase::kBlocked};
            if (!r.excluded) {
              t->second.sum += e.score;
              ++t->second.n;
            }
            j.rated.insert(e.clip_id);
            j.rating_indices.push_back(ratings_.size());
            ratings_.push_back(std::move(r));
            if (j.outstanding && j.outstanding->first == e.clip_id) j.outstanding.reset();
          },
          [&](const JudgeBlocked &e) {
            JudgeState &j = JudgeOrThrow(e.judge_id);
            if (j.phase == JudgePhase::kBlocked) return;
            j.phase = JudgePhase::kBlocked;
            j.block_reason = e.reason;
            j.outstanding.reset();
            for (std::size_t idx : j.rating_indices) {
              RatingRecord &r = ratings_[idx];
              if (r.excluded) continue;
              r.excluded = true;
              ClipTally &t = tally_[r.clip_id];
              t.sum -= r.score;
              --t.n;
            }
          },
      },
      event);
  ++events_;
}

std::optional<std::string> StudyEngine::ClipForToken(const std::string &token) const {
  std::lock_guard lock(mu_);
  auto it = tokens_.find(token);
  if (it == tokens_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::filesystem::path> StudyEngine::PathForClip(const std::string &clip_id) const {
  std::lock_guard lock(mu_);
  auto it = clips_.find(clip_id);
  if (it == clips_.end()) return std::nullopt;
  return it->second.path;
}

std::vector<ClipRef> StudyEngine::QualificationOrder(const std::string &judge_id) const {
  std::vector<ClipRef> refs;
  for (const auto &q : study_.qualification) refs.push_back({q.clip_id, clips_.at(q.clip_id).token});
  synth::Rng rng(Fnv1a(judge_id));
  for (std::size_t i = refs.size(); i > 1; --i) std::swap(refs[i - 1], refs[rng.UniformIndex(i)]);
  return refs;
}

Assignment StudyEngine::NextAssignment(const std::string &judge_id) {
  std::lock_guard lock(mu_);
  return NextLocked(judge_id);
}

Assignment StudyEngine::NextLocked(const std::string &judge_id) {
  if (!judges_.count(judge_id)) Emit(JudgeJoined{judge_id, Now()});
  JudgeState &j = judges_.at(judge_id);
  Assignment a;
  switch (j.phase) {
    case JudgePhase::kBlocked:
      a.phase = Directive::kBlocked;
      return a;
    case JudgePhase::kNew:
      a.phase = Directive::kTraining;
      a.total = study_.training.size();
      a.progress = j.training_rated.size();
      for (const auto &t : study_.training) {
        if (!j.training_rated.count(t.clip_id)) {
          a.clip = ClipRef{t.clip_id, clips_.at(t.clip_id).token};
          break;
        }
      }
      return a;
    case JudgePhase::kTrained:
      a.phase = Directive::kQualification;
      a.qualification = QualificationOrder(judge_id);
      a.total = a.qualification.size();
      return a;
    case JudgePhase::kQualified:
      break;
  }

  a.progress = j.rating_indices.size();
  const TimestampMs now = Now();
  const auto lease_ms = static_cast<TimestampMs>(std::llround(study_.config.assignment_lease_s * 1000.0));
  auto live = [&](TimestampMs at) { return at + lease_ms > now; };
  if (j.outstanding && live(j.outstanding->second)) {
    a.phase = Directive::kRate;
    a.clip = ClipRef{j.outstanding->first, clips_.at(j.outstanding->first).token};
    return a;
  }

  std::map<std::string, std::size_t> pending;
  for (const auto &[id, other] : judges_) {
    if (id == judge_id || other.phase == JudgePhase::kBlocked || !other.outstanding) continue;
    if (live(other.outstanding->second)) ++pending[other.outstanding->first];
  }
  const auto target = static_cast<std::size_t>(study_.config.ratings_per_clip_target);
  const std::string *best = nullptr;
  std::size_t best_n = std::numeric_limits<std::size_t>::max();
  for (const auto &[id, t] : tally_) {
    if (t.n >= best_n || j.rated.count(id)) continue;
    auto p = pending.find(id);
    const std::size_t reserved = p == pending.end() ? 0 : p->second;
    if (t.n + reserved >= target) continue;
    best = &id;
    best_n = t.n;
  }
  if (best == nullptr) {
    a.phase = Directive::kDone;
    return a;
  }
  Emit(ClipAssigned{judge_id, *best, now});
  a.phase = Directive::kRate;
  a.clip = ClipRef{*best, clips_.at(*best).token};
  return a;
}

SubmitResult StudyEngine::SubmitRating(const std::string &judge_id, const std::string &clip_id,
                                       int score) {
  std::lock_guard lock(mu_);
  SubmitResult result;
  auto reject = [&](SubmitStatus s) {
    result.status = s;
    return result;
  };
  auto jit = judges_.find(judge_id);
  if (jit == judges_.end()) return reject(SubmitStatus::kUnknownJudge);
  JudgeState &j = jit->second;
  if (j.phase == JudgePhase::kBlocked) return reject(SubmitStatus::kBlocked);
  auto cit = clips_.find(clip_id);
  if (cit == clips_.end()) return reject(SubmitStatus::kUnknownClip);
  if (!ScoreInRange(score)) return reject(SubmitStatus::kOutOfRange);

  switch (cit->second.kind) {
    case ClipKind::kQualification:
      return reject(SubmitStatus::kWrongPhase);
    case ClipKind::kTraining:
      if (j.training_rated.count(clip_id)) return reject(SubmitStatus::kDuplicate);
      if (j.phase != JudgePhase::kNew) return reject(SubmitStatus::kWrongPhase);
      Emit(TrainingRated{judge_id, clip_id, score, Now()});
      result.training = true;
      return result;
    case ClipKind::kRated:
      break;
  }
  if (j.phase != JudgePhase::kQualified) return reject(SubmitStatus::kNotQualified);
  if (j.rated.count(clip_id)) return reject(SubmitStatus::kDuplicate);
  if (!j.assigned.count(clip_id)) return reject(SubmitStatus::kNotAssigned);

  result.rating_id = ratings_.size() + 1;
  Emit(RatingSubmitted{result.rating_id, judge_id, clip_id, score, Now()});
  result.spam = SpamCheckLocked(j);
  if (result.spam.status == SpamStatus::kBlocked) Emit(JudgeBlocked{judge_id, "spam", Now()});
  return result;
}

QualificationResult StudyEngine::SubmitQualification(
    const std::string &judge_id, const std::vector<std::pair<std::string, int>> &answers) {
  std::lock_guard lock(mu_);
  QualificationResult result;
  auto reject = [&](SubmitStatus s) {
    result.status = s;
    return result;
  };
  auto jit = judges_.find(judge_id);
  if (jit == judges_.end()) return reject(SubmitStatus::kUnknownJudge);
  JudgeState &j = jit->second;
  result.attempts = j.qualification_attempts;
  if (j.phase == JudgePhase::kBlocked) return reject(SubmitStatus::kBlocked);
  if (j.phase != JudgePhase::kTrained) return reject(SubmitStatus::kWrongPhase);

  std::map<std::string, int> by_clip;
  for (const auto &[id, score] : answers) {
    auto cit = clips_.find(id);
    if (cit == clips_.end() || cit->second.kind != ClipKind::kQualification)
      return reject(SubmitStatus::kUnknownClip);
    if (!ScoreInRange(score)) return reject(SubmitStatus::kOutOfRange);
    if (!by_clip.emplace(id, score).second) return reject(SubmitStatus::kDuplicate);
  }
  if (by_clip.size() != study_.qualification.size()) return reject(SubmitStatus::kIncomplete);

  QualificationSubmitted e;
  e.judge_id = judge_id;
  e.at = Now();
  for (const auto &[id, score] : by_clip) {
    const int expected = clips_.at(id).expected;
    if ((expected == 5 && score >= 4) || (expected == 1 && score <= 2)) ++e.right;
    e.answers.emplace_back(id, score);
  }
  e.total = static_cast<int>(by_clip.size());
  e.passed = static_cast<double>(e.right) >=
             study_.config.qualification_pass_fraction * static_cast<double>(e.total) - 1e-9;
  result.right = e.right;
  result.total = e.total;
  result.passed = e.passed;
  result.score = static_cast<double>(e.right) / static_cast<double>(e.total);
  Emit(std::move(e));
  result.attempts = j.qualification_attempts;
  if (!result.passed && j.qualification_attempts > study_.config.qualification_retries) {
    Emit(JudgeBlocked{judge_id, "qualification", Now()});
    result.blocked = true;
  }
  return result;
}

SpamCheckResult StudyEngine::SpamCheckLocked(const JudgeState &judge) const {
  SpamCheckResult r;
  if (judge.phase == JudgePhase::kBlocked) {
    r.status = SpamStatus::kBlocked;
    return r;
  }
  const std::size_t window = study_.config.spam_window;
  double total = 0.0;
  for (auto it = judge.rating_indices.rbegin();
       it != judge.rating_indices.rend() && r.eligible < window; ++it) {
    const RatingRecord &rating = ratings_[*it];
    const ClipTally &t = tally_.at(rating.clip_id);
    const std::size_t peers = t.n - 1;
    if (peers < study_.config.spam_min_peers) continue;
    const double peer_mean = static_cast<double>(t.sum - rating.score) / static_cast<double>(peers);
    total += std::abs(static_cast<double>(rating.score) - peer_mean);
    ++r.eligible;
  }
  if (r.eligible == 0) return r;
  r.mean_abs_deviation = total / static_cast<double>(r.eligible);
  if (r.mean_abs_deviation > study_.config.spam_threshold)
    r.status = r.eligible >= window ? SpamStatus::kBlocked : SpamStatus::kFlagged;
  return r;
}

SpamCheckResult StudyEngine::SpamCheck(const std::string &judge_id) const {
  std::lock_guard lock(mu_);
  auto it = judges_.find(judge_id);
  if (it == judges_.end()) return {};
  return SpamCheckLocked(it->second);
}

void StudyEngine::BlockJudge(const std::string &judge_id, const std::string &reason) {
  std::lock_guard lock(mu_);
  auto it = judges_.find(judge_id);
  if (it == judges_.end() || it->second.phase == JudgePhase::kBlocked) return;
  Emit(JudgeBlocked{judge_id, reason, Now()});
}

MosReport StudyEngine::Report(bool normalize) const {
  std::lock_guard lock(mu_);
  MosReport report = AggregateMos(study_, ratings_);
  if (normalize) {
    const auto &c = study_.config;
    NormalizeToReference(report, c.noisy_condition, c.reference_condition,
                         {c.reference_noisy_mos, c.reference_wiener_mos});
  }
  return report;
}

std::vector<RatingRecord> StudyEngine::Ratings() const {
  std::lock_guard lock(mu_);
  return ratings_;
}

std::optional<JudgeState> StudyEngine::Judge(const std::string &judge_id) const {
  std::lock_guard lock(mu_);
  auto it = judges_.find(judge_id);
  if (it == judges_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> StudyEngine::JudgeIds() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto &[id, j] : judges_) ids.push_back(id);
  return ids;
}

std::size_t StudyEngine::IncludedCount(const std::string &clip_id) const {
  std::lock_guard lock(mu_);
  auto it = tally_.find(clip_id);
  return it == tally_.end() ? 0 : it->second.n;
}

std::size_t StudyEngine::event_count() const {
  std::lock_guard lock(mu_);
  return events_;
}

}  // namespace snsd::mos
