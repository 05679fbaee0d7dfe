#pragma once

#include "csv/plane.hpp"

namespace csv {

/// Per-pixel cube root of the product of three non-negative channel maps.
Plane geometric_fuse(const Plane& c0, const Plane& c1, const Plane& c2);

/// Structural difference: per channel |local_normalize(ref) -
/// local_normalize(dist)|, fused geometrically. Full input resolution.
Plane sd_map(const RgbImage& ref, const RgbImage& dist, int w,
             double eps = 1e-6);

/// Retinal ganglion cell-based difference: per channel
/// |ref * kernel - dist * kernel|, fused geometrically.
Plane rgcd_map(const RgbImage& ref, const RgbImage& dist, const Kernel& k);

}  // namespace csv
