// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsarbench::csv {

/// Comma-separated table with a header row. Quoted fields follow RFC 4180.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

Table parse(std::string_view text);

/// Throws Error(UnreadableFile) when the file cannot be opened.
Table read(const std::filesystem::path& path);

std::vector<std::string> split_line(std::string_view line);

std::string escape(std::string_view field);

/// Shortest text that round-trips to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);

}  // namespace qsarbench::csv
