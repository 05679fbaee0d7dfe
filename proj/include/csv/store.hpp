#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace csv {

/// Append-only journal of computed scores keyed by (pair id, config hash).
/// Scores live in scores.tsv; timestamps go to a times.tsv sidecar so score
/// files stay byte-reproducible. Partially written trailing lines from an
/// interrupted run are ignored on load.
class ResultStore {
 public:
  explicit ResultStore(const std::filesystem::path& dir);

  std::optional<double> lookup(const std::string& id,
                               std::uint64_t config_hash) const;

  /// Appends and flushes one record; safe to call from the batch writer only.
  void append(const std::string& id, std::uint64_t config_hash, double score);

  std::size_t size() const { return index_.size(); }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  static std::string key(const std::string& id, std::uint64_t hash);

  std::filesystem::path dir_;
  std::ofstream journal_;
  std::ofstream times_;
  std::unordered_map<std::string, double> index_;
  mutable std::mutex mutex_;
};

}  // namespace csv
