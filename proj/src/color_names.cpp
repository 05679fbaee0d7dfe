#include "csv/color_names.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "csv/color_convert.hpp"
#include "csv/errors.hpp"

namespace csv {

const char* color_name_label(ColorName name) {
  static constexpr const char* kLabels[kColorNameCount] = {
      "black", "blue",   "brown", "grey", "green", "orange",
      "pink",  "purple", "red",   "white", "yellow"};
  return kLabels[static_cast<int>(name)];
}

double ColorNameDescriptor::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

int ColorNameDescriptor::argmax() const {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) -
                          probs.begin());
}

bool ColorNameDescriptor::valid(double tol) const {
  for (double p : probs) {
    if (p < 0.0 || !std::isfinite(p)) return false;
  }
  return std::fabs(sum() - 1.0) <= tol;
}

ColorNameTable::ColorNameTable(std::vector<ColorNameDescriptor> rows)
    : rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != kBins) {
    throw ConfigError("color-name table must have exactly 32768 rows");
  }
}

int ColorNameTable::bin_index(double r, double g, double b) {
  const auto quant = [](double v) {
    return std::clamp(static_cast<int>(std::floor(v / 8.0)), 0, 31);
  };
  return quant(r) + 32 * quant(g) + 1024 * quant(b);
}

ColorNameTable load_color_name_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open color-name table: " + path.string());

  std::vector<ColorNameDescriptor> rows;
  rows.reserve(ColorNameTable::kBins);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    ColorNameDescriptor d;
    for (int i = 0; i < kColorNameCount; ++i) {
      if (!(ss >> d.probs[i])) {
        throw ConfigError("color-name table " + path.string() + " line " +
                          std::to_string(line_no) + ": expected 11 values");
      }
      if (d.probs[i] < 0.0 || !std::isfinite(d.probs[i])) {
        throw ConfigError("color-name table " + path.string() + " line " +
                          std::to_string(line_no) + ": negative probability");
      }
    }
    const double s = d.sum();
    if (std::fabs(s - 1.0) > 1e-3) {
      throw ConfigError("color-name table " + path.string() + " line " +
                        std::to_string(line_no) + ": row sum " +
                        std::to_string(s) + " too far from 1");
    }
    for (double& p : d.probs) p /= s;
    rows.push_back(d);
  }
  if (static_cast<int>(rows.size()) != ColorNameTable::kBins) {
    throw ConfigError("color-name table " + path.string() + ": expected 32768 rows, got " +
                      std::to_string(rows.size()));
  }
  return ColorNameTable(std::move(rows));
}

void save_color_name_table(const ColorNameTable& table,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write color-name table: " + path.string());
  out.precision(9);
  for (const auto& row : table.rows()) {
    for (int i = 0; i < kColorNameCount; ++i) {
      out << row.probs[i] << (i + 1 == kColorNameCount ? '\n' : ' ');
    }
  }
}

ColorNameTable make_synthetic_table() {
  // Prototype sRGB anchors for the 11 terms, in dictionary order.
  static constexpr double kAnchors[kColorNameCount][3] = {
      {0, 0, 0},       {0, 0, 255},     {139, 69, 19},  {128, 128, 128},
      {0, 128, 0},     {255, 165, 0},   {255, 192, 203}, {128, 0, 128},
      {255, 0, 0},     {255, 255, 255}, {255, 255, 0}};
  std::array<std::array<double, 3>, kColorNameCount> anchors_lab;
  for (int i = 0; i < kColorNameCount; ++i) {
    anchors_lab[i] = srgb_to_lab(kAnchors[i][0], kAnchors[i][1], kAnchors[i][2]);
  }

  std::vector<ColorNameDescriptor> rows(ColorNameTable::kBins);
  constexpr double kSoftness = 18.0;
  for (int bb = 0; bb < 32; ++bb) {
    for (int gg = 0; gg < 32; ++gg) {
      for (int rr = 0; rr < 32; ++rr) {
        const auto lab = srgb_to_lab(rr * 8 + 4, gg * 8 + 4, bb * 8 + 4);
        ColorNameDescriptor d;
        double total = 0.0;
        for (int i = 0; i < kColorNameCount; ++i) {
          const double dl = lab[0] - anchors_lab[i][0];
          const double da = lab[1] - anchors_lab[i][1];
          const double db = lab[2] - anchors_lab[i][2];
          const double dist = std::sqrt(dl * dl + da * da + db * db);
          d.probs[i] = std::exp(-dist / kSoftness);
          total += d.probs[i];
        }
        for (double& p : d.probs) p /= total;
        rows[rr + 32 * gg + 1024 * bb] = d;
      }
    }
  }
  return ColorNameTable(std::move(rows));
}

ColorNameDescriptor lookup_descriptor(double r, double g, double b,
                                      const ColorNameTable& table) {
  return table.row(ColorNameTable::bin_index(r, g, b));
}

GroundDistanceMatrix::GroundDistanceMatrix()
    : cells_(kColorNameCount, kColorNameCount, 1.0) {
  for (int i = 0; i < kColorNameCount; ++i) cells_.at(i, i) = 0.0;
  const auto set = [this](ColorName a, ColorName b, double v) {
    cells_.at(static_cast<int>(a), static_cast<int>(b)) = v;
    cells_.at(static_cast<int>(b), static_cast<int>(a)) = v;
  };
  // Perceptually similar pairs sit between identical and unrelated terms.
  set(ColorName::Black, ColorName::Brown, 0.5);
  set(ColorName::Black, ColorName::Grey, 0.5);
  set(ColorName::Brown, ColorName::Grey, 0.5);
  set(ColorName::Grey, ColorName::White, 0.5);
  set(ColorName::Orange, ColorName::Red, 0.5);
}

GroundDistanceMatrix::GroundDistanceMatrix(CostMatrix cells)
    : cells_(std::move(cells)) {
  if (cells_.rows() != kColorNameCount || cells_.cols() != kColorNameCount) {
    throw ConfigError("ground-distance matrix must be 11x11");
  }
  for (int i = 0; i < kColorNameCount; ++i) {
    if (cells_.at(i, i) != 0.0) {
      throw ConfigError("ground-distance matrix must have a zero diagonal");
    }
    for (int j = 0; j < kColorNameCount; ++j) {
      const double v = cells_.at(i, j);
      if (v < 0.0 || v > 1.0 || !std::isfinite(v)) {
        throw ConfigError("ground-distance entries must lie in [0,1]");
      }
      if (std::fabs(v - cells_.at(j, i)) > 1e-9) {
        throw ConfigError("ground-distance matrix must be symmetric");
      }
    }
  }
}

double GroundDistanceMatrix::max_distance() const {
  double m = 0.0;
  for (int i = 0; i < kColorNameCount; ++i) {
    for (int j = 0; j < kColorNameCount; ++j) m = std::max(m, cells_.at(i, j));
  }
  return m;
}

GroundDistanceMatrix load_ground_distance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ground-distance file: " + path.string());
  CostMatrix cells(kColorNameCount, kColorNameCount);
  for (int i = 0; i < kColorNameCount; ++i) {
    for (int j = 0; j < kColorNameCount; ++j) {
      if (!(in >> cells.at(i, j))) {
        throw ConfigError("ground-distance file " + path.string() +
                          ": expected 11x11 reals");
      }
    }
  }
  return GroundDistanceMatrix(std::move(cells));
}

double color_name_distance(const ColorNameDescriptor& a,
                           const ColorNameDescriptor& b,
                           const GroundDistanceMatrix& d) {
  return emd(a.probs, b.probs, d.cost());
}

Plane cnd_map(const LabImage& mu_ref, const LabImage& mu_dist,
              const ColorNameTable& table, const GroundDistanceMatrix& d) {
  if (!mu_ref.same_dims(mu_dist)) {
    throw std::invalid_argument("cnd_map: dimension mismatch");
  }
  const int w = mu_ref.width();
  const int h = mu_ref.height();
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto rgb_r = lab_to_srgb(mu_ref.l.at(x, y), mu_ref.a.at(x, y),
                                     mu_ref.b.at(x, y));
      const auto rgb_d = lab_to_srgb(mu_dist.l.at(x, y), mu_dist.a.at(x, y),
                                     mu_dist.b.at(x, y));
      const int bin_r = ColorNameTable::bin_index(rgb_r[0], rgb_r[1], rgb_r[2]);
      const int bin_d = ColorNameTable::bin_index(rgb_d[0], rgb_d[1], rgb_d[2]);
      if (bin_r == bin_d) {
        out.at(x, y) = 0.0;
        continue;
      }
      out.at(x, y) =
          color_name_distance(table.row(bin_r), table.row(bin_d), d);
    }
  }
  return out;
}

}  // namespace csv
