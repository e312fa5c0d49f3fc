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

#ifndef SNSD_COMMON_TABLE_IO_H_
#define SNSD_COMMON_TABLE_IO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace snsd {

// A header plus string cells, as read from a CSV or TSV file.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line of each row, for error messages.
  std::vector<std::size_t> line_numbers;

  // Index of a named column, or nullopt.
  std::optional<std::size_t> Column(std::string_view name) const;
  // Like Column() but throws InputDataError naming `source`.
  std::size_t RequireColumn(std::string_view name,
                            std::string_view source) const;
};

// Parses delimited text. When `delimiter` is 0 the delimiter is taken from
// the header line: tab if it contains one, comma otherwise. Double-quoted
// fields are honoured for comma-separated input. Blank lines are skipped;
// a row whose cell count differs from the header is an InputDataError.
DelimitedTable ParseDelimited(std::string_view text, std::string_view source,
                              char delimiter = 0);
DelimitedTable ReadDelimitedFile(const std::filesystem::path &path,
                                 char delimiter = 0);

// Quotes a CSV field when needed.
std::string CsvField(std::string_view field);
std::string JoinCsv(const std::vector<std::string> &fields);

// Shortest decimal representation that round-trips.
std::string FormatDouble(double value);
// Fixed-precision formatting for presentation tables.
std::string FormatFixed(double value, int decimals);

// Strict numeric parsing; nullopt on any trailing garbage or empty input.
std::optional<double> ParseDouble(std::string_view text);
std::optional<long long> ParseInt(std::string_view text);

std::vector<std::string> SplitString(std::string_view text, char delimiter);
std::string_view TrimWhitespace(std::string_view text);

}  // namespace snsd

#endif  // SNSD_COMMON_TABLE_IO_H_
