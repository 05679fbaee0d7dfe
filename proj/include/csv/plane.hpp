#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace csv {

/// Single-channel raster of real-valued samples, row-major.
class Plane {
 public:
  Plane() = default;

  Plane(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("Plane: dimensions must be positive");
    }
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  double& at(int x, int y) {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  double at(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  double& operator[](std::size_t i) { return samples_[i]; }
  double operator[](std::size_t i) const { return samples_[i]; }

  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }
  const double* row(int y) const {
    return samples_.data() + static_cast<std::size_t>(y) * width_;
  }
  double* row(int y) {
    return samples_.data() + static_cast<std::size_t>(y) * width_;
  }

  bool same_dims(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

/// Three-channel image; values are real, [0,255] when loaded from 8-bit files.
struct RgbImage {
  Plane r, g, b;

  int width() const { return r.width(); }
  int height() const { return r.height(); }
  bool same_dims(const RgbImage& other) const {
    return r.same_dims(other.r);
  }
  const Plane& channel(int j) const { return j == 0 ? r : (j == 1 ? g : b); }
  Plane& channel(int j) { return j == 0 ? r : (j == 1 ? g : b); }
};

/// CIELAB image: L in [0,100], a*/b* unbounded.
struct LabImage {
  Plane l, a, b;

  int width() const { return l.width(); }
  int height() const { return l.height(); }
  bool same_dims(const LabImage& other) const { return l.same_dims(other.l); }
};

/// Cylindrical LCH image: C >= 0, H in degrees [0, 360).
struct LchImage {
  Plane l, c, h;

  int width() const { return l.width(); }
  int height() const { return l.height(); }
};

/// Square convolution kernel with odd side length, centered.
class Kernel {
 public:
  Kernel() = default;

  Kernel(int side, double fill = 0.0) : side_(side) {
    if (side <= 0 || side % 2 == 0) {
      throw std::invalid_argument("Kernel: side length must be odd and positive");
    }
    coeffs_.assign(static_cast<std::size_t>(side) * side, fill);
  }

  int side() const { return side_; }
  int radius() const { return side_ / 2; }

  /// Centered access: dy, dx in [-radius, radius].
  double& at(int dy, int dx) {
    return coeffs_[static_cast<std::size_t>(dy + radius()) * side_ + (dx + radius())];
  }
  double at(int dy, int dx) const {
    return coeffs_[static_cast<std::size_t>(dy + radius()) * side_ + (dx + radius())];
  }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

 private:
  int side_ = 0;
  std::vector<double> coeffs_;
};

}  // namespace csv
