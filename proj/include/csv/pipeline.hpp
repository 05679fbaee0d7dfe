#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "csv/ciede2000.hpp"
#include "csv/color_names.hpp"
#include "csv/image_ops.hpp"
#include "csv/plane.hpp"

namespace csv {

enum class ColorDifferenceMode { Ciede2000, Euclidean };

std::string to_string(ColorDifferenceMode mode);
ColorDifferenceMode color_mode_from_string(const std::string& name);

/// Every tunable of the metric. Defaults reproduce the baseline variant.
struct CsvConfig {
  int window = 20;              // W, pooling / normalization window
  double k_l = 1.0;
  double k_c = 1.0;
  double k_h = 1.0;
  double ciede_cap = 20.0;      // T
  double sigma = 50.0;          // LoG standard deviation
  double cnd_weight = 0.9;      // A
  int pooling_root = 4;         // P
  Interp interp = Interp::Bicubic;
  ColorDifferenceMode color_mode = ColorDifferenceMode::Ciede2000;
  std::string table_path;
  std::string ground_distance_path;  // empty selects the built-in default
  double epsilon = 1e-6;

  void validate() const;  // throws ConfigError on out-of-range values
  Ciede2000Params ciede_params() const {
    return {k_l, k_c, k_h, ciede_cap};
  }
  /// LoG support: the window size rounded up to the nearest odd integer.
  int kernel_side() const { return window % 2 == 1 ? window : window + 1; }
};

/// Stable 64-bit hash over every config field plus the schema version; any
/// field change changes the hash.
std::uint64_t config_hash(const CsvConfig& cfg);

/// Key-value config file (`key = value`, `#` comments). Unknown keys and
/// malformed values raise ConfigError.
CsvConfig load_config(const std::filesystem::path& path);

/// Apply a variant switch: "b" bilinear, "n" nearest, "e" Euclidean color.
void apply_variant(CsvConfig& cfg, const std::string& variant);

/// Loaded lookup data, immutable and shareable across concurrent scoring.
struct CsvResources {
  ColorNameTable table;
  GroundDistanceMatrix ground;
};

/// Load table and ground distances named by the config.
CsvResources load_resources(const CsvConfig& cfg);

/// The four distortion maps, all at the full input resolution.
struct FeatureMaps {
  Plane ciede;
  Plane cnd;
  Plane sd;
  Plane rgcd;
};

FeatureMaps compute_feature_maps(const RgbImage& ref, const RgbImage& dist,
                                 const CsvConfig& cfg,
                                 const CsvResources& res);

struct CsvScore {
  double value = 0.0;
  std::optional<FeatureMaps> maps;
};

/// Full metric: multiplicative fusion of the four maps, then the residual of
/// the P-th root of the mean. 1.0 for identical inputs; higher is better.
CsvScore compute_csv(const RgbImage& ref, const RgbImage& dist,
                     const CsvConfig& cfg, const CsvResources& res,
                     bool keep_maps = false);

}  // namespace csv
