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

#ifndef SNSD_MOS_HTTP_SERVER_H_
#define SNSD_MOS_HTTP_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "snsd/mos/service.h"

namespace snsd::mos {

struct HttpServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  int threads = 8;
  // Relative paths in uploaded study descriptions resolve against this.
  std::filesystem::path study_base_dir = ".";
};

// JSON API over a RatingService:
//   POST /api/v1/judges
//   GET  /api/v1/studies
//   POST /api/v1/studies
//   GET  /api/v1/studies/{id}/next?judge=J
//   POST /api/v1/studies/{id}/ratings
//   POST /api/v1/studies/{id}/qualification
//   GET  /api/v1/studies/{id}/report[?normalize=anchors][&format=csv[&table=T]]
//   GET  /api/v1/studies/{id}/events
//   GET  /api/v1/studies/{id}/judges/{judge}
//   GET  /clips/{token}
//   GET  /healthz
class HttpServer {
 public:
  HttpServer(RatingService &service, HttpServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Binds the socket and returns the port. IoError on failure.
  int Bind();
  // Serves until Stop(); binds first if needed.
  void Run();
  // Runs on a background thread and returns once the server accepts.
  void Start();
  void Stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

}  // namespace snsd::mos

#endif  // SNSD_MOS_HTTP_SERVER_H_
