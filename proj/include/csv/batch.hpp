#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "csv/manifest.hpp"
#include "csv/pipeline.hpp"
#include "csv/store.hpp"

namespace csv {

struct PairResult {
  std::string id;
  std::optional<double> score;  // empty on failure
  std::string error;
  bool cached = false;
};

/// Score every manifest entry with a bounded worker pool. Completed records
/// flow through a queue to the single writing thread, which appends to the
/// store; already-stored (id, config hash) pairs are returned without
/// recomputation. Results come back in manifest order regardless of
/// scheduling. Per-entry failures are recorded and do not stop the batch.
std::vector<PairResult> run_batch(const Manifest& manifest,
                                  const CsvConfig& cfg,
                                  const CsvResources& res,
                                  ResultStore* store,  // may be null
                                  int jobs = 0);       // 0 = logical CPUs

/// Write `id<TAB>score` rows (17 significant digits) for scored entries and
/// an `<out>.failures.tsv` sidecar for the rest.
void write_results(const std::vector<PairResult>& results,
                   const std::filesystem::path& out_path);

/// Read a two-column `id<TAB>score` file, e.g. batch output or an external
/// metric's scores.
std::vector<std::pair<std::string, double>> read_score_file(
    const std::filesystem::path& path);

}  // namespace csv
