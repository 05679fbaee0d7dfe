#pragma once

#include "csv/plane.hpp"

namespace csv {

/// Environmental weights of the CIEDE2000 formula plus the cap applied to
/// per-pixel differences in the map computation.
struct Ciede2000Params {
  double k_l = 1.0;
  double k_c = 1.0;
  double k_h = 1.0;
  double cap = 20.0;  // T
};

/// CIEDE2000 color difference between two Lab triples. Symmetric, >= 0.
double ciede2000(double l1, double a1, double b1, double l2, double a2,
                 double b2, const Ciede2000Params& params = {});

/// Per-pixel min(deltaE00, cap) between two Lab images of equal dimensions.
Plane ciede_map(const LabImage& mu_ref, const LabImage& mu_dist,
                const Ciede2000Params& params = {});

/// Per-pixel mean of the absolute channel differences between two Lab images
/// (the Euclidean color substitute used by the CSV_e variant).
Plane euclidean_color_map(const LabImage& mu_ref, const LabImage& mu_dist);

}  // namespace csv
