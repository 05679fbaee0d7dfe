#pragma once

#include <string>

#include "csv/plane.hpp"

namespace csv {

enum class Interp { Bicubic, Bilinear, Nearest };

std::string to_string(Interp interp);
Interp interp_from_string(const std::string& name);

/// Mean over non-overlapping w-by-w windows. Output is ceil(h/w) x ceil(w/w);
/// partial windows at the right/bottom edge average their in-image pixels only.
Plane mean_pool(const Plane& p, int w);

/// Population standard deviation per window; `means` must be mean_pool(p, w).
Plane std_pool(const Plane& p, int w, const Plane& means);

/// Per non-overlapping window: (pixel - window mean) / (window std + eps).
/// Output has the input's dimensions. Flat windows map to zero via eps.
Plane local_normalize(const Plane& p, int w, double eps = 1e-6);

/// True 2-D convolution (kernel flipped), same-size output, mirror padding.
Plane convolve(const Plane& p, const Kernel& k);

/// Laplacian-of-Gaussian taps: (1/sqrt(2*pi*sigma^2)) *
/// ((m^2+n^2-2*sigma^2)/sigma^4) * exp(-(m^2+n^2)/(2*sigma^2)),
/// sampled on a centered odd-side grid. No renormalization.
Kernel log_kernel(double sigma, int side);

/// Separable resampling to target_w x target_h. Nearest uses floor-index
/// mapping; bilinear/bicubic use pixel-center alignment with clamped edges.
Plane resample(const Plane& p, int target_w, int target_h, Interp method);

}  // namespace csv
