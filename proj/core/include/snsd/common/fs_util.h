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

#ifndef SNSD_COMMON_FS_UTIL_H_
#define SNSD_COMMON_FS_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace snsd {

std::string ReadFileToString(const std::filesystem::path &path);

// Writes to a temporary sibling and renames over `path`.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view content);

// A scratch directory next to `target` that becomes `target` on Commit().
// An uncommitted staging directory is removed on destruction, so a failed
// run never leaves partial output at `target`.
class StagingDirectory {
 public:
  explicit StagingDirectory(std::filesystem::path target);
  ~StagingDirectory();
  StagingDirectory(const StagingDirectory &) = delete;
  StagingDirectory &operator=(const StagingDirectory &) = delete;

  const std::filesystem::path &path() const { return staging_; }
  const std::filesystem::path &target() const { return target_; }

  // Fails with IoError if `target` exists and is a non-empty directory.
  void Commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

}  // namespace snsd

#endif  // SNSD_COMMON_FS_UTIL_H_
