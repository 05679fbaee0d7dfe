#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csv/image_ops.hpp"
#include "csv/structure.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using csv::Kernel;
using csv::Plane;

namespace {

Kernel zero_sum_kernel() {
  Kernel k(3);
  for (double& c : k.coeffs()) c = 1.0;
  k.at(0, 0) = -8.0;
  return k;
}

}  // namespace

TEST_CASE("geometric_fuse basics") {
  Plane a(2, 1), b(2, 1), c(2, 1);
  a.at(0, 0) = 5.0; b.at(0, 0) = 5.0; c.at(0, 0) = 5.0;
  a.at(1, 0) = 1.0; b.at(1, 0) = 8.0; c.at(1, 0) = 27.0;
  const Plane out = csv::geometric_fuse(a, b, c);
  CHECK(out.at(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(out.at(1, 0) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("geometric_fuse zero channel zeroes the pixel") {
  Plane a(1, 1, 0.0), b(1, 1, 3.0), c(1, 1, 9.0);
  CHECK(csv::geometric_fuse(a, b, c)[0] == 0.0);
}

TEST_CASE("geometric_fuse rejects negative samples") {
  Plane a(1, 1, -0.5), b(1, 1, 1.0), c(1, 1, 1.0);
  CHECK_THROWS_AS(csv::geometric_fuse(a, b, c), std::invalid_argument);
}

TEST_CASE("geometric_fuse lies between channel min and max") {
  const Plane a = synthetic::random_plane(9, 9, 1, 0.0, 10.0);
  const Plane b = synthetic::random_plane(9, 9, 2, 0.0, 10.0);
  const Plane c = synthetic::random_plane(9, 9, 3, 0.0, 10.0);
  const Plane out = csv::geometric_fuse(a, b, c);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i] <= std::max({a[i], b[i], c[i]}) + 1e-12);
    CHECK(out[i] >= std::min({a[i], b[i], c[i]}) - 1e-12);
  }
}

TEST_CASE("scaling one channel scales the fusion by the cube root") {
  const Plane a = synthetic::random_plane(6, 6, 4, 0.1, 5.0);
  const Plane b = synthetic::random_plane(6, 6, 5, 0.1, 5.0);
  const Plane c = synthetic::random_plane(6, 6, 6, 0.1, 5.0);
  Plane a_scaled = a;
  const double s = 7.0;
  for (std::size_t i = 0; i < a_scaled.size(); ++i) a_scaled[i] *= s;
  const Plane base = csv::geometric_fuse(a, b, c);
  const Plane scaled = csv::geometric_fuse(a_scaled, b, c);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(scaled[i] == doctest::Approx(std::cbrt(s) * base[i]).epsilon(1e-9));
  }
}

TEST_CASE("sd_map is zero for identical images") {
  const csv::RgbImage img = synthetic::natural_image(45, 30, 7);
  const Plane out = csv::sd_map(img, img, 20);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("sd_map is non-negative and symmetric in its arguments") {
  const csv::RgbImage a = synthetic::natural_image(41, 29, 8);
  const csv::RgbImage b = synthetic::add_gaussian_noise(a, 12.0, 9);
  const Plane ab = csv::sd_map(a, b, 10);
  const Plane ba = csv::sd_map(b, a, 10);
  for (std::size_t i = 0; i < ab.size(); ++i) {
    CHECK(ab[i] >= 0.0);
    CHECK(ab[i] == ba[i]);
  }
}

TEST_CASE("sd_map matches the composed-primitive oracle") {
  const csv::RgbImage a = synthetic::random_rgb_image(23, 17, 10);
  const csv::RgbImage b = synthetic::random_rgb_image(23, 17, 13);
  const int w = 8;
  const Plane got = csv::sd_map(a, b, w);

  Plane channels[3];
  for (int j = 0; j < 3; ++j) {
    const Plane na = oracle::local_normalize(a.channel(j), w, 1e-6);
    const Plane nb = oracle::local_normalize(b.channel(j), w, 1e-6);
    channels[j] = Plane(23, 17);
    for (std::size_t i = 0; i < channels[j].size(); ++i) {
      channels[j][i] = std::fabs(na[i] - nb[i]);
    }
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double want = std::cbrt(channels[0][i] * channels[1][i] * channels[2][i]);
    CHECK(got[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("sd_map is invariant under a shared positive affine transform") {
  const csv::RgbImage a = synthetic::random_rgb_image(30, 20, 14);
  const csv::RgbImage b = synthetic::random_rgb_image(30, 20, 15);
  csv::RgbImage a2 = a, b2 = b;
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < a2.channel(j).size(); ++i) {
      a2.channel(j)[i] = 1.7 * a.channel(j)[i] + 11.0;
      b2.channel(j)[i] = 1.7 * b.channel(j)[i] + 11.0;
    }
  }
  const Plane base = csv::sd_map(a, b, 10);
  const Plane mapped = csv::sd_map(a2, b2, 10);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(mapped[i] == doctest::Approx(base[i]).epsilon(1e-6));
  }
}

TEST_CASE("rgcd_map is zero for identical images") {
  const csv::RgbImage img = synthetic::natural_image(40, 25, 16);
  const Plane out = csv::rgcd_map(img, img, csv::log_kernel(50.0, 21));
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("a zero-sum kernel cancels constant offsets") {
  const csv::RgbImage a = synthetic::natural_image(30, 30, 17);
  csv::RgbImage b = a;
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < b.channel(j).size(); ++i) b.channel(j)[i] += 10.0;
  }
  const Plane out = csv::rgcd_map(a, b, zero_sum_kernel());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] < 1e-6);
}

TEST_CASE("rgcd_map matches the composed-primitive oracle") {
  const csv::RgbImage a = synthetic::random_rgb_image(19, 15, 18);
  const csv::RgbImage b = synthetic::random_rgb_image(19, 15, 19);
  const Kernel k = csv::log_kernel(5.0, 7);
  const Plane got = csv::rgcd_map(a, b, k);

  Plane channels[3];
  for (int j = 0; j < 3; ++j) {
    const Plane ca = oracle::convolve(a.channel(j), k);
    const Plane cb = oracle::convolve(b.channel(j), k);
    channels[j] = Plane(19, 15);
    for (std::size_t i = 0; i < channels[j].size(); ++i) {
      channels[j][i] = std::fabs(ca[i] - cb[i]);
    }
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double want = std::cbrt(channels[0][i] * channels[1][i] * channels[2][i]);
    CHECK(got[i] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("rgcd_map is symmetric in its arguments") {
  const csv::RgbImage a = synthetic::random_rgb_image(16, 16, 20);
  const csv::RgbImage b = synthetic::random_rgb_image(16, 16, 21);
  const Kernel k = csv::log_kernel(3.0, 9);
  const Plane ab = csv::rgcd_map(a, b, k);
  const Plane ba = csv::rgcd_map(b, a, k);
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == ba[i]);
}

TEST_CASE("maps reject mismatched dimensions") {
  const csv::RgbImage a = synthetic::random_rgb_image(8, 8, 22);
  const csv::RgbImage b = synthetic::random_rgb_image(9, 8, 23);
  CHECK_THROWS_AS(csv::sd_map(a, b, 4), std::invalid_argument);
  CHECK_THROWS_AS(csv::rgcd_map(a, b, csv::log_kernel(2.0, 5)),
                  std::invalid_argument);
}
