#include "csv/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csv {

std::string to_string(Interp interp) {
  switch (interp) {
    case Interp::Bicubic: return "bicubic";
    case Interp::Bilinear: return "bilinear";
    case Interp::Nearest: return "nearest";
  }
  return "bicubic";
}

Interp interp_from_string(const std::string& name) {
  if (name == "bicubic") return Interp::Bicubic;
  if (name == "bilinear") return Interp::Bilinear;
  if (name == "nearest") return Interp::Nearest;
  throw std::invalid_argument("unknown interpolation method: " + name);
}

namespace {

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

Plane mean_pool(const Plane& p, int w) {
  if (w < 1) throw std::invalid_argument("mean_pool: window size must be >= 1");
  const int out_w = ceil_div(p.width(), w);
  const int out_h = ceil_div(p.height(), w);
  Plane out(out_w, out_h);
  for (int by = 0; by < out_h; ++by) {
    const int y0 = by * w;
    const int y1 = std::min(y0 + w, p.height());
    for (int bx = 0; bx < out_w; ++bx) {
      const int x0 = bx * w;
      const int x1 = std::min(x0 + w, p.width());
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        const double* r = p.row(y);
        for (int x = x0; x < x1; ++x) sum += r[x];
      }
      out.at(bx, by) = sum / (static_cast<double>(y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

Plane std_pool(const Plane& p, int w, const Plane& means) {
  if (w < 1) throw std::invalid_argument("std_pool: window size must be >= 1");
  const int out_w = ceil_div(p.width(), w);
  const int out_h = ceil_div(p.height(), w);
  if (means.width() != out_w || means.height() != out_h) {
    throw std::invalid_argument("std_pool: means plane does not match pooled dims");
  }
  Plane out(out_w, out_h);
  for (int by = 0; by < out_h; ++by) {
    const int y0 = by * w;
    const int y1 = std::min(y0 + w, p.height());
    for (int bx = 0; bx < out_w; ++bx) {
      const int x0 = bx * w;
      const int x1 = std::min(x0 + w, p.width());
      const double mu = means.at(bx, by);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        const double* r = p.row(y);
        for (int x = x0; x < x1; ++x) {
          const double d = r[x] - mu;
          sum += d * d;
        }
      }
      out.at(bx, by) = std::sqrt(sum / (static_cast<double>(y1 - y0) * (x1 - x0)));
    }
  }
  return out;
}

Plane local_normalize(const Plane& p, int w, double eps) {
  if (w < 1) throw std::invalid_argument("local_normalize: window size must be >= 1");
  const Plane means = mean_pool(p, w);
  const Plane stds = std_pool(p, w, means);
  Plane out(p.width(), p.height());
  for (int y = 0; y < p.height(); ++y) {
    const int by = y / w;
    const double* src = p.row(y);
    double* dst = out.row(y);
    for (int x = 0; x < p.width(); ++x) {
      const int bx = x / w;
      dst[x] = (src[x] - means.at(bx, by)) / (stds.at(bx, by) + eps);
    }
  }
  return out;
}

namespace {

// Symmetric reflection (edge pixel duplicated), folded until in range.
inline int mirror_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace

Plane convolve(const Plane& p, const Kernel& k) {
  const int side = k.side();
  if (side > 2 * std::min(p.width(), p.height())) {
    throw std::invalid_argument("convolve: kernel side exceeds 2*min(dims)");
  }
  const int r = k.radius();
  const int pw = p.width() + 2 * r;
  const int ph = p.height() + 2 * r;

  std::vector<double> padded(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ph; ++y) {
    const double* src = p.row(mirror_index(y - r, p.height()));
    double* dst = padded.data() + static_cast<std::size_t>(y) * pw;
    for (int x = 0; x < pw; ++x) dst[x] = src[mirror_index(x - r, p.width())];
  }

  // out[y][x] = sum_k K[ky][kx] * p[y-(ky-r)][x-(kx-r)]; in padded coordinates
  // this is a correlation with the flipped kernel.
  Kernel flipped(side);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) flipped.at(dy, dx) = k.at(-dy, -dx);
  }

  Plane out(p.width(), p.height());
  const double* kd = flipped.coeffs().data();
  for (int y = 0; y < p.height(); ++y) {
    double* dst = out.row(y);
    for (int x = 0; x < p.width(); ++x) {
      double acc = 0.0;
      for (int ky = 0; ky < side; ++ky) {
        const double* prow =
            padded.data() + static_cast<std::size_t>(y + ky) * pw + x;
        const double* krow = kd + static_cast<std::size_t>(ky) * side;
        for (int kx = 0; kx < side; ++kx) acc += krow[kx] * prow[kx];
      }
      dst[x] = acc;
    }
  }
  return out;
}

Kernel log_kernel(double sigma, int side) {
  if (sigma <= 0.0) throw std::invalid_argument("log_kernel: sigma must be positive");
  if (side <= 0 || side % 2 == 0) {
    throw std::invalid_argument("log_kernel: side length must be odd and positive");
  }
  Kernel k(side);
  const double s2 = sigma * sigma;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2);
  const int r = side / 2;
  for (int m = -r; m <= r; ++m) {
    for (int n = -r; n <= r; ++n) {
      const double q = static_cast<double>(m) * m + static_cast<double>(n) * n;
      k.at(m, n) = norm * (q - 2.0 * s2) / (s2 * s2) * std::exp(-q / (2.0 * s2));
    }
  }
  return k;
}

namespace {

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Keys cubic convolution kernel, a = -0.5. Weights sum to 1 for any phase.
inline double cubic_weight(double t) {
  constexpr double a = -0.5;
  t = std::fabs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

// Resample one axis; `horizontal` selects which one.
Plane resample_axis(const Plane& p, int target, bool horizontal, Interp method) {
  const int src = horizontal ? p.width() : p.height();
  const int out_w = horizontal ? target : p.width();
  const int out_h = horizontal ? p.height() : target;
  Plane out(out_w, out_h);

  auto sample = [&](int fixed, int i) {
    return horizontal ? p.at(i, fixed) : p.at(fixed, i);
  };
  auto store = [&](int fixed, int i, double v) {
    if (horizontal) out.at(i, fixed) = v; else out.at(fixed, i) = v;
  };

  const int lines = horizontal ? p.height() : p.width();
  const double scale = static_cast<double>(src) / target;

  for (int d = 0; d < target; ++d) {
    if (method == Interp::Nearest) {
      const int s = clamp_index(static_cast<int>((static_cast<long long>(d) * src) / target), src);
      for (int line = 0; line < lines; ++line) store(line, d, sample(line, s));
      continue;
    }
    const double f = (d + 0.5) * scale - 0.5;
    const int base = static_cast<int>(std::floor(f));
    const double t = f - base;
    if (method == Interp::Bilinear) {
      const int i0 = clamp_index(base, src);
      const int i1 = clamp_index(base + 1, src);
      for (int line = 0; line < lines; ++line) {
        store(line, d, (1.0 - t) * sample(line, i0) + t * sample(line, i1));
      }
    } else {
      double wts[4];
      int idx[4];
      for (int k = 0; k < 4; ++k) {
        wts[k] = cubic_weight(t - (k - 1));
        idx[k] = clamp_index(base + k - 1, src);
      }
      for (int line = 0; line < lines; ++line) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += wts[k] * sample(line, idx[k]);
        store(line, d, acc);
      }
    }
  }
  return out;
}

}  // namespace

Plane resample(const Plane& p, int target_w, int target_h, Interp method) {
  if (target_w < 1 || target_h < 1) {
    throw std::invalid_argument("resample: target dimensions must be >= 1");
  }
  Plane tmp = resample_axis(p, target_w, /*horizontal=*/true, method);
  return resample_axis(tmp, target_h, /*horizontal=*/false, method);
}

}  // namespace csv
