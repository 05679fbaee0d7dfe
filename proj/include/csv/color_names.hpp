#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "csv/emd.hpp"
#include "csv/plane.hpp"

namespace csv {

inline constexpr int kColorNameCount = 11;

/// Dictionary order used by descriptors, tables, and ground distances.
enum class ColorName {
  Black, Blue, Brown, Grey, Green, Orange, Pink, Purple, Red, White, Yellow
};

const char* color_name_label(ColorName name);

/// Probability vector over the 11 basic color terms.
struct ColorNameDescriptor {
  std::array<double, kColorNameCount> probs{};

  double sum() const;
  int argmax() const;
  bool valid(double tol = 1e-6) const;
};

/// Lookup table over 32768 quantized RGB bins:
/// bin = floor(R/8) + 32*floor(G/8) + 1024*floor(B/8).
class ColorNameTable {
 public:
  static constexpr int kBins = 32768;

  ColorNameTable() = default;
  explicit ColorNameTable(std::vector<ColorNameDescriptor> rows);

  static int bin_index(double r, double g, double b);

  const ColorNameDescriptor& row(int bin) const { return rows_[bin]; }
  const std::vector<ColorNameDescriptor>& rows() const { return rows_; }

 private:
  std::vector<ColorNameDescriptor> rows_;
};

/// Text table: 32768 lines of 11 space-separated non-negative reals in bin
/// order. Rows are renormalized when |sum - 1| <= 1e-3, rejected otherwise.
ColorNameTable load_color_name_table(const std::filesystem::path& path);

void save_color_name_table(const ColorNameTable& table,
                           const std::filesystem::path& path);

/// Deterministic stand-in table for use when the published lookup table is
/// unavailable: softmax over Lab distances to fixed prototype colors.
ColorNameTable make_synthetic_table();

ColorNameDescriptor lookup_descriptor(double r, double g, double b,
                                      const ColorNameTable& table);

/// Symmetric 11x11 perceptual ground distances in [0,1], zero diagonal.
class GroundDistanceMatrix {
 public:
  GroundDistanceMatrix();  // the built-in default weights
  explicit GroundDistanceMatrix(CostMatrix cells);  // validated

  double at(ColorName a, ColorName b) const {
    return cells_.at(static_cast<int>(a), static_cast<int>(b));
  }
  double at(int a, int b) const { return cells_.at(a, b); }
  const CostMatrix& cost() const { return cells_; }
  double max_distance() const;

 private:
  CostMatrix cells_;
};

/// Text matrix: 11 lines of 11 reals; symmetry, zero diagonal, and the [0,1]
/// range are validated on load.
GroundDistanceMatrix load_ground_distance(const std::filesystem::path& path);

/// EMD between two color-name descriptors under the given ground distances.
double color_name_distance(const ColorNameDescriptor& a,
                           const ColorNameDescriptor& b,
                           const GroundDistanceMatrix& d);

/// Per-pixel EMD between descriptors of two mean-pooled Lab maps. The pooled
/// Lab values are converted back to sRGB for table indexing.
Plane cnd_map(const LabImage& mu_ref, const LabImage& mu_dist,
              const ColorNameTable& table, const GroundDistanceMatrix& d);

}  // namespace csv
