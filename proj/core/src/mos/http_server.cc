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

#include "snsd/mos/http_server.h"

#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/mos/report_io.h"

namespace snsd::mos {

using nlohmann::json;

namespace {

constexpr char kJson[] = "application/json";

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJson);
}

void Fail(httplib::Response &res, int status, const std::string &reason,
          const std::string &message = {}) {
  json body = {{"error", reason}};
  if (!message.empty()) body["message"] = message;
  Reply(res, status, body);
}

int StatusFor(SubmitStatus s) {
  switch (s) {
    case SubmitStatus::kAccepted: return 201;
    case SubmitStatus::kUnknownJudge:
    case SubmitStatus::kUnknownClip: return 404;
    case SubmitStatus::kNotQualified:
    case SubmitStatus::kBlocked: return 403;
    case SubmitStatus::kDuplicate:
    case SubmitStatus::kNotAssigned:
    case SubmitStatus::kWrongPhase: return 409;
    case SubmitStatus::kOutOfRange:
    case SubmitStatus::kIncomplete: return 422;
  }
  return 400;
}

int StatusFor(const Error &e) {
  switch (e.kind()) {
    case ErrorKind::kInvalidArgument: return 400;
    case ErrorKind::kInputData: return 422;
    case ErrorKind::kState: return 409;
    case ErrorKind::kIo: return 500;
  }
  return 500;
}

std::string ClipUrl(const std::string &token) { return "/clips/" + token; }

json ClipJson(const ClipRef &ref) {
  return {{"clip_token", ref.token}, {"clip_url", ClipUrl(ref.token)}};
}

// Scores must be JSON integers; anything else is out of range.
std::optional<int> ScoreOf(const json &v) {
  if (!v.is_number_integer()) return std::nullopt;
  const auto s = v.get<long long>();
  if (s < -1000 || s > 1000) return std::nullopt;
  return static_cast<int>(s);
}

}  // namespace

struct HttpServer::Impl {
  RatingService &service;
  HttpServerOptions options;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  Impl(RatingService &s, HttpServerOptions o) : service(s), options(std::move(o)) {}

  StudyEngine *StudyOr404(const httplib::Request &req, httplib::Response &res) {
    StudyEngine *engine = service.FindStudy(req.matches[1]);
    if (engine == nullptr) Fail(res, 404, "unknown_study");
    return engine;
  }

  std::optional<json> Body(const httplib::Request &req, httplib::Response &res) {
    try {
      json j = json::parse(req.body);
      if (!j.is_object()) throw json::type_error::create(302, "body must be a JSON object", nullptr);
      return j;
    } catch (const json::exception &e) {
      Fail(res, 400, "malformed_json", e.what());
      return std::nullopt;
    }
  }

  // Resolves a token to a clip of this study.
  std::optional<std::string> TokenClip(const std::string &study_id, const std::string &token) {
    auto r = service.ResolveToken(token);
    if (!r || r->study_id != study_id) return std::nullopt;
    return r->clip_id;
  }

  void Routes() {
    server.set_exception_handler([](const httplib::Request &, httplib::Response &res,
                                    std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const Error &e) {
        Fail(res, StatusFor(e), ErrorKindName(e.kind()), e.what());
      } catch (const std::exception &e) {
        Fail(res, 500, "internal", e.what());
      }
    });

    server.Get("/healthz", [](const httplib::Request &, httplib::Response &res) {
      Reply(res, 200, {{"ok", true}});
    });

    server.Post("/api/v1/judges", [this](const httplib::Request &, httplib::Response &res) {
      Reply(res, 201, {{"judge_id", service.RegisterJudge()}});
    });

    server.Get("/api/v1/studies", [this](const httplib::Request &, httplib::Response &res) {
      Reply(res, 200, {{"studies", service.StudyIds()}});
    });

    server.Post("/api/v1/studies", [this](const httplib::Request &req, httplib::Response &res) {
      Study study = ParseStudySpec(req.body, options.study_base_dir);
      const std::string id = service.CreateStudy(std::move(study));
      const StudyEngine *engine = service.FindStudy(id);
      Reply(res, 201, {{"study_id", id},
                       {"items", engine->study().clips.size()},
                       {"conditions", engine->study().Conditions()}});
    });

    server.Get(R"(/api/v1/studies/([A-Za-z0-9_-]+)/next)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 StudyEngine *engine = StudyOr404(req, res);
                 if (engine == nullptr) return;
                 const std::string judge = req.get_param_value("judge");
                 if (!service.JudgeRegistered(judge)) return Fail(res, 404, "unknown_judge");
                 const Assignment a = engine->NextAssignment(judge);
                 json body = {{"phase", DirectiveName(a.phase)},
                              {"progress", a.progress},
                              {"total", a.total}};
                 if (a.clip) body.update(ClipJson(*a.clip));
                 if (a.phase == Directive::kQualification) {
                   json q = json::array();
                   for (const auto &ref : a.qualification) q.push_back(ClipJson(ref));
                   body["qualification"] = std::move(q);
                   if (!a.qualification.empty()) body.update(ClipJson(a.qualification.front()));
                 }
                 Reply(res, 200, body);
               });

    server.Post(R"(/api/v1/studies/([A-Za-z0-9_-]+)/ratings)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  StudyEngine *engine = StudyOr404(req, res);
                  if (engine == nullptr) return;
                  auto body = Body(req, res);
                  if (!body) return;
                  const std::string judge = body->value("judge", "");
                  const std::string token = body->value("clip_token", "");
                  if (!service.JudgeRegistered(judge)) return Fail(res, 404, "unknown_judge");
                  const auto clip = TokenClip(req.matches[1], token);
                  if (!clip) return Fail(res, 404, "unknown_clip");
                  const auto score = body->contains("score") ? ScoreOf(body->at("score")) : std::nullopt;
                  if (!score) return Fail(res, 422, "out_of_range");
                  const SubmitResult r = engine->SubmitRating(judge, *clip, *score);
                  if (!r.accepted()) return Fail(res, StatusFor(r.status), SubmitStatusName(r.status));
                  json out = {{"status", "accepted"}, {"training", r.training}};
                  if (!r.training) {
                    out["rating_id"] = r.rating_id;
                    out["spam"] = SpamStatusName(r.spam.status);
                  }
                  Reply(res, 201, out);
                });

    server.Post(R"(/api/v1/studies/([A-Za-z0-9_-]+)/qualification)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  StudyEngine *engine = StudyOr404(req, res);
                  if (engine == nullptr) return;
                  auto body = Body(req, res);
                  if (!body) return;
                  const std::string judge = body->value("judge", "");
                  if (!service.JudgeRegistered(judge)) return Fail(res, 404, "unknown_judge");
                  const auto it = body->find("answers");
                  if (it == body->end() || !it->is_array()) return Fail(res, 422, "incomplete");
                  std::vector<std::pair<std::string, int>> answers;
                  for (const auto &a : *it) {
                    if (!a.is_object()) return Fail(res, 400, "malformed_json");
                    const auto clip = TokenClip(req.matches[1], a.value("clip_token", ""));
                    if (!clip) return Fail(res, 404, "unknown_clip");
                    const auto score = a.contains("score") ? ScoreOf(a.at("score")) : std::nullopt;
                    if (!score) return Fail(res, 422, "out_of_range");
                    answers.emplace_back(*clip, *score);
                  }
                  const QualificationResult r = engine->SubmitQualification(judge, answers);
                  if (r.status != SubmitStatus::kAccepted)
                    return Fail(res, StatusFor(r.status), SubmitStatusName(r.status));
                  Reply(res, 200, {{"pass", r.passed},
                                   {"score", r.score},
                                   {"right", r.right},
                                   {"total", r.total},
                                   {"attempts", r.attempts},
                                   {"blocked", r.blocked}});
                });

    server.Get(R"(/api/v1/studies/([A-Za-z0-9_-]+)/report)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 StudyEngine *engine = StudyOr404(req, res);
                 if (engine == nullptr) return;
                 const std::string normalize = req.get_param_value("normalize");
                 if (!normalize.empty() && normalize != "anchors")
                   return Fail(res, 400, "bad_parameter", "normalize must be 'anchors'");
                 const MosReport report = engine->Report(normalize == "anchors");
                 const std::string format = req.get_param_value("format");
                 if (format.empty() || format == "json") {
                   res.set_content(ReportToJson(report), kJson);
                   return;
                 }
                 if (format != "csv") return Fail(res, 400, "bad_parameter", "format must be json or csv");
                 const std::string table = req.has_param("table") ? req.get_param_value("table") : "clips";
                 for (const auto &[name, content] : ReportFiles(report)) {
                   if (name == table + ".csv") {
                     res.set_content(content, "text/csv");
                     return;
                   }
                 }
                 Fail(res, 400, "bad_parameter", "unknown table " + table);
               });

    server.Get(R"(/api/v1/studies/([A-Za-z0-9_-]+)/events)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 if (StudyOr404(req, res) == nullptr) return;
                 res.set_content(ReadFileToString(service.EventLogPath(req.matches[1])),
                                 "application/x-ndjson");
               });

    server.Get(R"(/api/v1/studies/([A-Za-z0-9_-]+)/judges/([A-Za-z0-9_-]+))",
               [this](const httplib::Request &req, httplib::Response &res) {
                 StudyEngine *engine = StudyOr404(req, res);
                 if (engine == nullptr) return;
                 const auto j = engine->Judge(req.matches[2]);
                 if (!j) return Fail(res, 404, "unknown_judge");
                 const SpamCheckResult spam = engine->SpamCheck(j->judge_id);
                 Reply(res, 200, {{"judge_id", j->judge_id},
                                  {"phase", JudgePhaseName(j->phase)},
                                  {"ratings_submitted", j->rating_indices.size()},
                                  {"qualification_attempts", j->qualification_attempts},
                                  {"qualification_score", j->qualification_score},
                                  {"spam", SpamStatusName(spam.status)},
                                  {"mean_abs_deviation", spam.mean_abs_deviation}});
               });

    server.Get(R"(/clips/([0-9a-f]+))", [this](const httplib::Request &req, httplib::Response &res) {
      const auto clip = service.ResolveToken(req.matches[1]);
      if (!clip) return Fail(res, 404, "unknown_clip");
      res.set_content(ReadFileToString(clip->path), "audio/wav");
    });
  }
};

HttpServer::HttpServer(RatingService &service, HttpServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  const int threads = std::max(1, impl_->options.threads);
  impl_->server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  impl_->Routes();
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind() {
  if (impl_->bound) return port_;
  const auto &o = impl_->options;
  if (o.port == 0) {
    port_ = impl_->server.bind_to_any_port(o.host);
  } else {
    port_ = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (port_ < 0) throw IoError(fmt::format("cannot bind {}:{}", o.host, o.port));
  impl_->bound = true;
  return port_;
}

void HttpServer::Run() {
  Bind();
  spdlog::info("listening on {}:{}", impl_->options.host, port_);
  impl_->server.listen_after_bind();
}

void HttpServer::Start() {
  Bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace snsd::mos
