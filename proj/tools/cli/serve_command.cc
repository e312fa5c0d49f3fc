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

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "cli/cli.h"
#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/mos/http_server.h"
#include "snsd/mos/service.h"
#include "snsd/mos/study.h"

namespace snsd::cli {

namespace fs = std::filesystem;

namespace {

struct ServeFlags {
  std::string data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 8;
  std::string study;
};

void RunServe(const ServeFlags &f) {
  std::string data_dir = f.data_dir;
  if (data_dir.empty()) {
    const char *env = std::getenv("SNSD_DATA_DIR");
    if (env == nullptr || *env == '\0')
      throw InvalidArgumentError("--data-dir or SNSD_DATA_DIR is required");
    data_dir = env;
  }
  if (f.port < 0 || f.port > 65535) throw InvalidArgumentError("--port must be in 0..65535");
  if (f.threads < 1) throw InvalidArgumentError("--threads must be positive");

  mos::RatingService service(data_dir);
  if (!f.study.empty()) {
    const fs::path spec(f.study);
    mos::Study study = mos::ParseStudySpec(ReadFileToString(spec), spec.parent_path());
    if (!study.study_id.empty() && service.FindStudy(study.study_id) != nullptr) {
      spdlog::info("study {} already exists; keeping its log", study.study_id);
    } else {
      spdlog::info("created study {}", service.CreateStudy(std::move(study)));
    }
  }

  // Handle SIGINT/SIGTERM synchronously on this thread; the server's
  // threads inherit the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  mos::HttpServer server(service, {f.host, f.port, f.threads, fs::current_path()});
  server.Start();
  std::printf("serving %s on http://%s:%d\n", data_dir.c_str(), f.host.c_str(), server.port());
  std::fflush(stdout);
  int sig = 0;
  sigwait(&signals, &sig);
  spdlog::info("signal {}, shutting down", sig);
  server.Stop();
  service.WriteSnapshots();
}

}  // namespace

void AddServeCommand(CLI::App &app, Action &action) {
  auto flags = std::make_shared<ServeFlags>();
  CLI::App *cmd = app.add_subcommand("serve", "Run the rating service HTTP API");
  cmd->add_option("--data-dir", flags->data_dir, "Data directory (default $SNSD_DATA_DIR)");
  cmd->add_option("--host", flags->host, "Listen address")->capture_default_str();
  cmd->add_option("--port", flags->port, "Listen port; 0 picks a free one")->capture_default_str();
  cmd->add_option("--threads", flags->threads, "Request worker threads")->capture_default_str();
  cmd->add_option("--study", flags->study, "Study description (JSON) to create at startup")
      ->check(CLI::ExistingFile);
  cmd->callback([&action, flags] { action = [flags] { RunServe(*flags); }; });
}

}  // namespace snsd::cli
