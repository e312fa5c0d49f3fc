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

#include "snsd/synth/manifest.h"

#include <set>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "snsd/common/table_io.h"

namespace snsd::synth {

namespace {

const std::vector<std::string> kColumns = {
    "clip_id",    "noisy_path", "clean_path", "noise_path", "snr_db",
    "noise_type", "speaker_id", "segment_id", "duration_s", "post_mix_gain"};

void CheckCell(const std::string &cell) {
  if (cell.find_first_of("\t\n\r") != std::string::npos)
    throw InvalidArgumentError("manifest field contains a tab or newline: " + cell);
}

}  // namespace

std::string FormatManifest(const std::vector<MixtureRecord> &records) {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out.push_back('\t');
    out += kColumns[i];
  }
  out.push_back('\n');
  for (const auto &r : records) {
    std::vector<std::string> cells = {r.clip_id,
                                      r.noisy_path.generic_string(),
                                      r.clean_path.generic_string(),
                                      r.noise_path.generic_string(),
                                      FormatDouble(r.snr_db),
                                      r.noise_type,
                                      r.speaker_id,
                                      r.segment_id,
                                      FormatDouble(r.duration_s),
                                      FormatDouble(r.post_mix_gain)};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      CheckCell(cells[i]);
      if (i) out.push_back('\t');
      out += cells[i];
    }
    out.push_back('\n');
  }
  return out;
}

void WriteManifest(const std::vector<MixtureRecord> &records,
                   const std::filesystem::path &path) {
  WriteFileAtomic(path, FormatManifest(records));
}

std::vector<MixtureRecord> ParseManifest(const std::string &text,
                                         const std::string &source) {
  DelimitedTable table = ParseDelimited(text, source, '\t');
  std::vector<std::size_t> col;
  for (const auto &name : kColumns) col.push_back(table.RequireColumn(name, source));

  std::vector<MixtureRecord> records;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto &row = table.rows[i];
    auto number = [&](std::size_t c) {
      auto v = ParseDouble(row[col[c]]);
      if (!v)
        throw InputDataError(fmt::format("{}:{}: bad number in column {}", source,
                                         table.line_numbers[i], kColumns[c]));
      return *v;
    };
    MixtureRecord r;
    r.clip_id = row[col[0]];
    r.noisy_path = row[col[1]];
    r.clean_path = row[col[2]];
    r.noise_path = row[col[3]];
    r.snr_db = number(4);
    r.noise_type = row[col[5]];
    r.speaker_id = row[col[6]];
    r.segment_id = row[col[7]];
    r.duration_s = number(8);
    r.post_mix_gain = number(9);
    if (!seen.insert(r.clip_id).second)
      throw InputDataError(fmt::format("{}: duplicate clip_id '{}'", source, r.clip_id));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<MixtureRecord> ReadManifest(const std::filesystem::path &path) {
  return ParseManifest(ReadFileToString(path), path.string());
}

}  // namespace snsd::synth
