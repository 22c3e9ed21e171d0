// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "qsarbench/experiment.hpp"

namespace qsarbench {

struct ReportFiles {
  std::filesystem::path results;     // results.json: config echo, aggregates, every trial
  std::filesystem::path plot_table;  // plot_table.csv: one row per (x, n, model)
  std::filesystem::path partitions;  // partitions.csv: one row per (x, n, model, split)
};

/// Writes the three report files into `dir` (created if needed). Refuses
/// reports with no trials or whose aggregates disagree with the raw trials.
/// Output bytes are a pure function of the report.
ReportFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir);

std::string report_to_json(const ExperimentReport& report);
std::string plot_table_csv(const ExperimentReport& report);
std::string partitions_csv(const ExperimentReport& report);

/// Parses results.json back into a report.
ExperimentReport load_report(const std::filesystem::path& results_json);
ExperimentReport report_from_json(const std::string& text);

}  // namespace qsarbench
