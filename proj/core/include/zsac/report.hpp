#pragma once

#include <span>
#include <string>
#include <vector>

#include "zsac/evaluate.hpp"

namespace zsac {

/// Percent with one decimal, as printed in the result tables.
std::string format_percent(double accuracy);

/// Runs as rows: label, categories, sizes, accuracy.
std::string format_run_csv(const AccuracyReport& report);

/// The summary table for one setting: per-category accuracy for
/// settings 1, 3 and 4; the training x evaluation matrix for setting 2.
std::string format_setting_table(const AccuracyReport& report);

/// Per-evaluation-category comparison across settings 2 (averaged over
/// training categories), 3 and 4. Only settings present get a column.
std::string format_settings_comparison(std::span<const AccuracyReport> reports);

/// Header row and first column carry the class labels.
std::string format_confusion_csv(const ConfusionMatrix& confusion);

std::string format_summary_json(std::span<const AccuracyReport> reports, bool with_timestamp);

struct ReportOptions {
  /// Adds a generated_at field to summary.json. It is the only
  /// non-deterministic byte in the output.
  bool timestamp = true;
};

/// Writes summary.json, accuracy_<setting>.csv, table_<setting>.csv,
/// confusion_<run>.csv and, when settings 2-4 are present,
/// accuracy_by_setting.csv. Returns the paths written.
std::vector<std::string> write_report(std::span<const AccuracyReport> reports,
                                      const std::string& out_dir, ReportOptions options = {});

}  // namespace zsac
