#include "support/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "csv/image_ops.hpp"

namespace synthetic {

csv::Plane random_plane(int w, int h, std::uint32_t seed, double lo, double hi) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  csv::Plane p(w, h);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = dist(rng);
  return p;
}

csv::RgbImage random_rgb_image(int w, int h, std::uint32_t seed) {
  return {random_plane(w, h, seed), random_plane(w, h, seed + 1),
          random_plane(w, h, seed + 2)};
}

namespace {

// Coarse random grid interpolated bilinearly: cheap band-limited texture.
csv::Plane value_noise(int w, int h, int cell, std::uint32_t seed, double amp) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amp, amp);
  const int gw = w / cell + 2;
  const int gh = h / cell + 2;
  std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
  for (double& g : grid) g = dist(rng);
  csv::Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    const double fy = static_cast<double>(y) / cell;
    const int y0 = static_cast<int>(fy);
    const double ty = fy - y0;
    for (int x = 0; x < w; ++x) {
      const double fx = static_cast<double>(x) / cell;
      const int x0 = static_cast<int>(fx);
      const double tx = fx - x0;
      const auto g = [&](int gx, int gy) {
        return grid[static_cast<std::size_t>(gy) * gw + gx];
      };
      p.at(x, y) = (1 - ty) * ((1 - tx) * g(x0, y0) + tx * g(x0 + 1, y0)) +
                   ty * ((1 - tx) * g(x0, y0 + 1) + tx * g(x0 + 1, y0 + 1));
    }
  }
  return p;
}

}  // namespace

csv::RgbImage natural_image(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Sky-to-ground gradient with channel-specific tints.
  double base[3], slope[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = 60.0 + 140.0 * unit(rng);
    slope[c] = -80.0 + 160.0 * unit(rng);
  }

  struct Blob {
    double cx, cy, rx, ry, level[3];
  };
  std::vector<Blob> blobs(6);
  for (auto& blob : blobs) {
    blob.cx = unit(rng) * w;
    blob.cy = unit(rng) * h;
    blob.rx = (0.05 + 0.2 * unit(rng)) * w;
    blob.ry = (0.05 + 0.2 * unit(rng)) * h;
    for (int c = 0; c < 3; ++c) blob.level[c] = -70.0 + 140.0 * unit(rng);
  }

  csv::RgbImage img{csv::Plane(w, h), csv::Plane(w, h), csv::Plane(w, h)};
  csv::Plane texture[3] = {
      value_noise(w, h, 5, seed + 11, 12.0),
      value_noise(w, h, 5, seed + 12, 12.0),
      value_noise(w, h, 5, seed + 13, 12.0),
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double v = base[c] + slope[c] * y / h;
        for (const auto& blob : blobs) {
          const double dx = (x - blob.cx) / blob.rx;
          const double dy = (y - blob.cy) / blob.ry;
          v += blob.level[c] * std::exp(-(dx * dx + dy * dy));
        }
        v += texture[c].at(x, y);
        img.channel(c).at(x, y) = std::clamp(v, 0.0, 255.0);
      }
    }
  }
  return img;
}

csv::RgbImage constant_image(int w, int h, double r, double g, double b) {
  return {csv::Plane(w, h, r), csv::Plane(w, h, g), csv::Plane(w, h, b)};
}

csv::RgbImage add_gaussian_noise(const csv::RgbImage& img, double sigma,
                                 std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  csv::RgbImage out = img;
  for (int c = 0; c < 3; ++c) {
    auto& plane = out.channel(c);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      plane[i] = std::clamp(plane[i] + noise(rng), 0.0, 255.0);
    }
  }
  return out;
}

csv::RgbImage gaussian_blur(const csv::RgbImage& img, double sigma) {
  int side = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
  side = std::min(side, 2 * std::min(img.width(), img.height()) - 1);
  if (side % 2 == 0) --side;
  csv::Kernel k(side);
  double sum = 0.0;
  const int r = side / 2;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k.at(dy, dx) = v;
      sum += v;
    }
  }
  for (double& c : k.coeffs()) c /= sum;
  csv::RgbImage out = img;
  for (int c = 0; c < 3; ++c) out.channel(c) = csv::convolve(img.channel(c), k);
  return out;
}

std::vector<double> random_masses(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.01, 1.0);
  std::vector<double> masses(n);
  double sum = 0.0;
  for (double& m : masses) {
    m = dist(rng);
    sum += m;
  }
  for (double& m : masses) m /= sum;
  return masses;
}

csv::ColorNameDescriptor random_descriptor(std::uint32_t seed) {
  const auto masses = random_masses(csv::kColorNameCount, seed);
  csv::ColorNameDescriptor d;
  std::copy(masses.begin(), masses.end(), d.probs.begin());
  return d;
}

csv::ColorNameDescriptor one_hot(int index) {
  csv::ColorNameDescriptor d;
  d.probs.fill(0.0);
  d.probs[index] = 1.0;
  return d;
}

csv::ColorNameTable saturate(const csv::ColorNameTable& table) {
  std::vector<csv::ColorNameDescriptor> rows = table.rows();
  for (auto& row : rows) {
    const int top = row.argmax();
    row.probs.fill(0.0);
    row.probs[top] = 1.0;
  }
  return csv::ColorNameTable(std::move(rows));
}

}  // namespace synthetic
