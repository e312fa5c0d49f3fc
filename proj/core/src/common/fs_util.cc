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

#include "snsd/common/fs_util.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <unistd.h>

#include "snsd/common/error.h"

namespace fs = std::filesystem;

namespace snsd {

namespace {

std::string UniqueSuffix() {
  static std::atomic<unsigned> counter{0};
  return fmt::format("{}.{}", static_cast<long>(::getpid()), counter++);
}

}  // namespace

std::string ReadFileToString(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) throw FileNotFoundError(path.string());
    throw InputDataError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const fs::path &path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp." + UniqueSuffix();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot rename into {}: {}", path.string(),
                              ec.message()));
  }
}

StagingDirectory::StagingDirectory(fs::path target) : target_(std::move(target)) {
  if (target_.filename().empty()) target_ = target_.parent_path();
  fs::path parent = target_.parent_path();
  std::error_code ec;
  if (!parent.empty()) fs::create_directories(parent, ec);
  staging_ = target_;
  staging_ += ".partial-" + UniqueSuffix();
  fs::create_directories(staging_, ec);
  if (ec)
    throw IoError(fmt::format("cannot create {}: {}", staging_.string(),
                              ec.message()));
}

StagingDirectory::~StagingDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagingDirectory::Commit() {
  std::error_code ec;
  if (fs::exists(target_, ec)) {
    if (!fs::is_directory(target_) || !fs::is_empty(target_))
      throw IoError("output already exists and is not empty: " + target_.string());
    fs::remove(target_, ec);
  }
  fs::rename(staging_, target_, ec);
  if (ec)
    throw IoError(fmt::format("cannot move output into {}: {}", target_.string(),
                              ec.message()));
  committed_ = true;
}

}  // namespace snsd
