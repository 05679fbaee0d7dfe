#include "csv/color_convert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace csv {

namespace {

// IEC 61966-2-1 sRGB primaries, D65 white. Rows sum to the white point, so
// neutral inputs map to a* = b* = 0 exactly.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kWhite[3] = {0.95047, 1.0, 1.08883};

// Exact inverse of kRgbToXyz, so Lab -> sRGB -> Lab round-trips to machine
// precision instead of the 1e-4 drift of the usual truncated constants.
struct XyzToRgb {
  double m[3][3];
  XyzToRgb() {
    double a[3][6] = {};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] = kRgbToXyz[i][j];
      a[i][3 + i] = 1.0;
    }
    for (int col = 0; col < 3; ++col) {
      int pivot = col;
      for (int r = col + 1; r < 3; ++r) {
        if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
      }
      std::swap(a[col], a[pivot]);
      const double div = a[col][col];
      for (int j = 0; j < 6; ++j) a[col][j] /= div;
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double f = a[r][col];
        for (int j = 0; j < 6; ++j) a[r][j] -= f * a[col][j];
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = a[i][3 + j];
    }
  }
};

const XyzToRgb kXyzToRgb;

inline double srgb_decode(double v) {
  const double c = v / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double srgb_encode(double c) {
  const double v = c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
  return v * 255.0;
}

constexpr double kLabDelta = 6.0 / 29.0;

inline double lab_f(double t) {
  return t > kLabDelta * kLabDelta * kLabDelta
             ? std::cbrt(t)
             : t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
}

inline double lab_f_inv(double f) {
  return f > kLabDelta ? f * f * f
                       : 3.0 * kLabDelta * kLabDelta * (f - 4.0 / 29.0);
}

}  // namespace

std::array<double, 3> srgb_to_lab(double r, double g, double b) {
  const double lin[3] = {srgb_decode(r), srgb_decode(g), srgb_decode(b)};
  double xyz[3];
  for (int i = 0; i < 3; ++i) {
    xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] +
             kRgbToXyz[i][2] * lin[2];
  }
  const double fx = lab_f(xyz[0] / kWhite[0]);
  const double fy = lab_f(xyz[1] / kWhite[1]);
  const double fz = lab_f(xyz[2] / kWhite[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage srgb_to_lab(const RgbImage& img, std::size_t* clamped) {
  const int w = img.width();
  const int h = img.height();
  LabImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  std::size_t clamp_count = 0;
  for (int y = 0; y < h; ++y) {
    const double* pr = img.r.row(y);
    const double* pg = img.g.row(y);
    const double* pb = img.b.row(y);
    double* ol = out.l.row(y);
    double* oa = out.a.row(y);
    double* ob = out.b.row(y);
    for (int x = 0; x < w; ++x) {
      double r = pr[x], g = pg[x], b = pb[x];
      if (r < 0.0 || r > 255.0 || g < 0.0 || g > 255.0 || b < 0.0 || b > 255.0) {
        ++clamp_count;
        r = std::clamp(r, 0.0, 255.0);
        g = std::clamp(g, 0.0, 255.0);
        b = std::clamp(b, 0.0, 255.0);
      }
      const auto lab = srgb_to_lab(r, g, b);
      ol[x] = lab[0];
      oa[x] = lab[1];
      ob[x] = lab[2];
    }
  }
  if (clamped) *clamped = clamp_count;
  return out;
}

std::array<double, 3> lab_to_srgb(double l, double a, double b) {
  const double fy = (l + 16.0) / 116.0;
  const double fx = fy + a / 500.0;
  const double fz = fy - b / 200.0;
  const double xyz[3] = {kWhite[0] * lab_f_inv(fx), kWhite[1] * lab_f_inv(fy),
                         kWhite[2] * lab_f_inv(fz)};
  std::array<double, 3> rgb{};
  for (int i = 0; i < 3; ++i) {
    const double lin = kXyzToRgb.m[i][0] * xyz[0] + kXyzToRgb.m[i][1] * xyz[1] +
                       kXyzToRgb.m[i][2] * xyz[2];
    rgb[i] = std::clamp(srgb_encode(lin), 0.0, 255.0);
  }
  return rgb;
}

RgbImage lab_to_srgb(const LabImage& img) {
  const int w = img.width();
  const int h = img.height();
  RgbImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto rgb = lab_to_srgb(img.l.at(x, y), img.a.at(x, y), img.b.at(x, y));
      out.r.at(x, y) = rgb[0];
      out.g.at(x, y) = rgb[1];
      out.b.at(x, y) = rgb[2];
    }
  }
  return out;
}

std::array<double, 3> lab_to_lch(double l, double a, double b) {
  const double c = std::hypot(a, b);
  double h = 0.0;
  if (c > 0.0) {
    h = std::atan2(b, a) * 180.0 / std::numbers::pi;
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h = 0.0;
  }
  return {l, c, h};
}

LchImage lab_to_lch(const LabImage& img) {
  const int w = img.width();
  const int h = img.height();
  LchImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto lch = lab_to_lch(img.l.at(x, y), img.a.at(x, y), img.b.at(x, y));
      out.l.at(x, y) = lch[0];
      out.c.at(x, y) = lch[1];
      out.h.at(x, y) = lch[2];
    }
  }
  return out;
}

}  // namespace csv
