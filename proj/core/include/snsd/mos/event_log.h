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

#ifndef SNSD_MOS_EVENT_LOG_H_
#define SNSD_MOS_EVENT_LOG_H_

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <vector>

#include "snsd/mos/events.h"

namespace snsd::mos {

class EventSink {
 public:
  virtual ~EventSink() = default;
  // Must either persist the event or throw; nothing is applied on failure.
  virtual void Append(const Event &event) = 0;
};

// Keeps events in memory; useful for tests and replays.
class MemoryEventLog : public EventSink {
 public:
  void Append(const Event &event) override;
  std::vector<Event> events() const;

 private:
  mutable std::mutex mu_;
  std::vector<Event> events_;
};

// JSON-lines file, one event per line, flushed and synced per append.
class FileEventLog : public EventSink {
 public:
  explicit FileEventLog(const std::filesystem::path &path);
  ~FileEventLog() override;
  FileEventLog(const FileEventLog &) = delete;
  FileEventLog &operator=(const FileEventLog &) = delete;

  void Append(const Event &event) override;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::FILE *file_ = nullptr;
};

// Reads every event of a log. A final line without a newline (an
// interrupted append) is dropped; any other malformed line throws
// InputDataError naming the line.
std::vector<Event> ReadEventLog(const std::filesystem::path &path);
std::vector<Event> ParseEventLog(const std::string &text, const std::string &source);
std::string FormatEventLog(const std::vector<Event> &events);

}  // namespace snsd::mos

#endif  // SNSD_MOS_EVENT_LOG_H_
