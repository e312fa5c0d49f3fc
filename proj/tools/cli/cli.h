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

#ifndef SNSD_TOOLS_CLI_CLI_H_
#define SNSD_TOOLS_CLI_CLI_H_

#include <filesystem>
#include <functional>
#include <string>

namespace CLI {
class App;
}

namespace snsd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInputData = 3;
inline constexpr int kExitRuntime = 4;

// Parses argv, runs one subcommand and maps failures onto exit codes.
int RunCli(int argc, char **argv);

// Each Add*Command registers a subcommand and returns the action to run
// after a successful parse.
using Action = std::function<void()>;
void AddSynthCommand(CLI::App &app, Action &action);
void AddEnhanceCommand(CLI::App &app, Action &action);
void AddMetricsCommand(CLI::App &app, Action &action);
void AddReportCommand(CLI::App &app, Action &action);
void AddServeCommand(CLI::App &app, Action &action);

// InvalidArgumentError unless `dir` is absent or an empty directory.
void RequireFreshOutputDir(const std::filesystem::path &dir);
// Writes atomically to `path`, or to stdout when `path` is empty or "-".
void WriteOutput(const std::string &path, const std::string &content);

}  // namespace snsd::cli

#endif  // SNSD_TOOLS_CLI_CLI_H_
