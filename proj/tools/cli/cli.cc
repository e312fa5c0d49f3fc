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

#include "cli/cli.h"

#include <cstdio>
#include <exception>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"

namespace snsd::cli {

namespace {

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return kExitUsage;
    case ErrorKind::kInputData: return kExitInputData;
    case ErrorKind::kIo:
    case ErrorKind::kState: return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace

void RequireFreshOutputDir(const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  if (!fs::exists(dir)) return;
  if (!fs::is_directory(dir) || !fs::is_empty(dir))
    throw InvalidArgumentError("output " + dir.string() + " exists and is not an empty directory");
}

void WriteOutput(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  WriteFileAtomic(path, content);
}

int RunCli(int argc, char **argv) {
  CLI::App app{"snsd: noisy speech synthesis, Wiener enhancement and MOS testing"};
  app.require_subcommand(1);
  std::string verbosity = "info";
  app.add_option("--log-level", verbosity, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  Action action;
  AddSynthCommand(app, action);
  AddEnhanceCommand(app, action);
  AddMetricsCommand(app, action);
  AddReportCommand(app, action);
  AddServeCommand(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!spdlog::get("snsd")) spdlog::set_default_logger(spdlog::stderr_color_mt("snsd"));
  spdlog::set_level(spdlog::level::from_str(verbosity));
  spdlog::set_pattern("[%l] %v");

  try {
    action();
  } catch (const Error &e) {
    std::fprintf(stderr, "snsd: %s\n", e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::exception &e) {
    std::fprintf(stderr, "snsd: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace snsd::cli
