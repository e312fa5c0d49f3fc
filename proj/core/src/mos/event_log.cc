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

#include "snsd/mos/event_log.h"

#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"

namespace snsd::mos {

void MemoryEventLog::Append(const Event &event) {
  std::lock_guard lock(mu_);
  events_.push_back(event);
}

std::vector<Event> MemoryEventLog::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

FileEventLog::FileEventLog(const std::filesystem::path &path) : path_(path) {
  file_ = std::fopen(path.c_str(), "ab");
  if (file_ == nullptr)
    throw IoError(fmt::format("cannot open event log {}: {}", path.string(), std::strerror(errno)));
}

FileEventLog::~FileEventLog() {
  if (file_ != nullptr) std::fclose(file_);
}

void FileEventLog::Append(const Event &event) {
  std::string line = EncodeEvent(event);
  line.push_back('\n');
  std::lock_guard lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0 ||
      ::fsync(::fileno(file_)) != 0) {
    throw IoError(fmt::format("cannot append to {}: {}", path_.string(), std::strerror(errno)));
  }
}

std::vector<Event> ParseEventLog(const std::string &text, const std::string &source) {
  std::vector<Event> events;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      spdlog::warn("{}: dropping incomplete final line {}", source, line_no);
      break;
    }
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      events.push_back(DecodeEvent(line));
    } catch (const Error &e) {
      throw InputDataError(fmt::format("{}:{}: {}", source, line_no, e.what()));
    }
  }
  return events;
}

std::vector<Event> ReadEventLog(const std::filesystem::path &path) {
  return ParseEventLog(ReadFileToString(path), path.string());
}

std::string FormatEventLog(const std::vector<Event> &events) {
  std::string out;
  for (const auto &e : events) {
    out += EncodeEvent(e);
    out.push_back('\n');
  }
  return out;
}

}  // namespace snsd::mos
