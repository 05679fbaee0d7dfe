#include "csv/structure.hpp"

#include <cmath>
#include <stdexcept>

#include "csv/image_ops.hpp"

namespace csv {

Plane geometric_fuse(const Plane& c0, const Plane& c1, const Plane& c2) {
  if (!c0.same_dims(c1) || !c0.same_dims(c2)) {
    throw std::invalid_argument("geometric_fuse: dimension mismatch");
  }
  Plane out(c0.width(), c0.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = c0[i], y = c1[i], z = c2[i];
    if (x < 0.0 || y < 0.0 || z < 0.0) {
      throw std::invalid_argument("geometric_fuse: negative sample");
    }
    out[i] = std::cbrt(x * y * z);
  }
  return out;
}

namespace {

Plane abs_diff(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::fabs(a[i] - b[i]);
  return out;
}

}  // namespace

Plane sd_map(const RgbImage& ref, const RgbImage& dist, int w, double eps) {
  if (!ref.same_dims(dist)) {
    throw std::invalid_argument("sd_map: dimension mismatch");
  }
  Plane channels[3];
  for (int j = 0; j < 3; ++j) {
    channels[j] = abs_diff(local_normalize(ref.channel(j), w, eps),
                           local_normalize(dist.channel(j), w, eps));
  }
  return geometric_fuse(channels[0], channels[1], channels[2]);
}

Plane rgcd_map(const RgbImage& ref, const RgbImage& dist, const Kernel& k) {
  if (!ref.same_dims(dist)) {
    throw std::invalid_argument("rgcd_map: dimension mismatch");
  }
  Plane channels[3];
  for (int j = 0; j < 3; ++j) {
    channels[j] = abs_diff(convolve(ref.channel(j), k), convolve(dist.channel(j), k));
  }
  return geometric_fuse(channels[0], channels[1], channels[2]);
}

}  // namespace csv
