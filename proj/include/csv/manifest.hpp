#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace csv {

struct ManifestEntry {
  std::string id;
  std::filesystem::path reference;
  std::filesystem::path distorted;
  double subjective = 0.0;
  std::string category;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  /// Entries dropped because a referenced image file is missing.
  std::vector<std::string> missing_file_warnings;
};

/// Tab-separated, five columns with a header row:
/// id, reference path, distorted path, subjective score, category.
/// Relative image paths resolve against the manifest's directory.
/// Malformed rows and duplicate ids raise ConfigError naming the offender;
/// rows whose image files are missing are excluded with a warning.
Manifest parse_manifest(const std::filesystem::path& path);

void write_manifest(const Manifest& m, const std::filesystem::path& path);

}  // namespace csv
