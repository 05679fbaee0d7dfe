#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "csv/manifest.hpp"
#include "csv/stats.hpp"

namespace csv {

/// One metric evaluated on one pair subset.
struct MetricEval {
  int n = 0;
  RegressionParams regression;
  double plcc = 0.0;  // after regression
  double scc = 0.0;
  double kcc = 0.0;
  HistDistances hist;  // mapped scores vs subjective scores
};

struct CategoryReport {
  std::string name;
  MetricEval csv;
  std::map<std::string, MetricEval> external;
  /// Per external metric: {PLCC, SCC, KCC} significance vs the CSV metric
  /// (1 = significantly different). Coefficient magnitudes are compared, so
  /// metric orientation does not matter.
  std::map<std::string, std::array<int, 3>> significance;
};

struct EvaluationReport {
  std::vector<CategoryReport> categories;  // "overall" first
  std::vector<std::string> skipped_categories;
  std::vector<std::string> unmatched_ids;
};

struct ReportOptions {
  bool global_fit = false;  // fit the regression once and reuse per category
  int hist_bins = 10;
  LogisticForm form = LogisticForm::Standard;
  double alpha = 0.05;
};

/// Join scores to the manifest, evaluate per category tag and overall, and
/// compare against any external metric score sets. Categories with fewer
/// than 8 pairs are skipped with a notice.
EvaluationReport build_report(
    const std::vector<std::pair<std::string, double>>& scores,
    const Manifest& manifest,
    const std::map<std::string, std::vector<std::pair<std::string, double>>>&
        external,
    const ReportOptions& options = {});

void write_report_json(const EvaluationReport& report,
                       const std::filesystem::path& path);
void write_report_tsv(const EvaluationReport& report,
                      const std::filesystem::path& path);

}  // namespace csv
