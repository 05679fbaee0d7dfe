#include "csv/ciede2000.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csv {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
// 25^7, the chroma scale of the G and R_C terms.
constexpr double kPow25_7 = 6103515625.0;

inline double hue_deg(double b, double a) {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a) / kDeg;
  return h < 0.0 ? h + 360.0 : h;
}

}  // namespace

double ciede2000(double l1, double a1, double b1, double l2, double a2,
                 double b2, const Ciede2000Params& params) {
  const double c1 = std::hypot(a1, b1);
  const double c2 = std::hypot(a2, b2);
  const double c_bar = 0.5 * (c1 + c2);
  const double c_bar7 = std::pow(c_bar, 7.0);
  const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + kPow25_7)));

  const double ap1 = (1.0 + g) * a1;
  const double ap2 = (1.0 + g) * a2;
  const double cp1 = std::hypot(ap1, b1);
  const double cp2 = std::hypot(ap2, b2);
  const double hp1 = hue_deg(b1, ap1);
  const double hp2 = hue_deg(b2, ap2);

  const double dl = l2 - l1;
  const double dc = cp2 - cp1;

  double dh = 0.0;
  const double cp_prod = cp1 * cp2;
  if (cp_prod != 0.0) {
    dh = hp2 - hp1;
    if (dh > 180.0) dh -= 360.0;
    else if (dh < -180.0) dh += 360.0;
  }
  const double dH = 2.0 * std::sqrt(cp_prod) * std::sin(0.5 * dh * kDeg);

  const double l_bar = 0.5 * (l1 + l2);
  const double cp_bar = 0.5 * (cp1 + cp2);

  double hp_bar = hp1 + hp2;
  if (cp_prod != 0.0) {
    const double diff = std::fabs(hp1 - hp2);
    if (diff <= 180.0) {
      hp_bar = 0.5 * (hp1 + hp2);
    } else if (hp1 + hp2 < 360.0) {
      hp_bar = 0.5 * (hp1 + hp2 + 360.0);
    } else {
      hp_bar = 0.5 * (hp1 + hp2 - 360.0);
    }
  }

  const double t = 1.0 - 0.17 * std::cos((hp_bar - 30.0) * kDeg) +
                   0.24 * std::cos(2.0 * hp_bar * kDeg) +
                   0.32 * std::cos((3.0 * hp_bar + 6.0) * kDeg) -
                   0.20 * std::cos((4.0 * hp_bar - 63.0) * kDeg);

  const double dtheta = 30.0 * std::exp(-((hp_bar - 275.0) / 25.0) * ((hp_bar - 275.0) / 25.0));
  const double cp_bar7 = std::pow(cp_bar, 7.0);
  const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + kPow25_7));
  const double rt = -std::sin(2.0 * dtheta * kDeg) * rc;

  const double lm50 = (l_bar - 50.0) * (l_bar - 50.0);
  const double sl = 1.0 + 0.015 * lm50 / std::sqrt(20.0 + lm50);
  const double sc = 1.0 + 0.045 * cp_bar;
  const double sh = 1.0 + 0.015 * cp_bar * t;

  const double tl = dl / (params.k_l * sl);
  const double tc = dc / (params.k_c * sc);
  const double th = dH / (params.k_h * sh);

  return std::sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
}

Plane ciede_map(const LabImage& mu_ref, const LabImage& mu_dist,
                const Ciede2000Params& params) {
  if (!mu_ref.same_dims(mu_dist)) {
    throw std::invalid_argument("ciede_map: dimension mismatch");
  }
  const int w = mu_ref.width();
  const int h = mu_ref.height();
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double de = ciede2000(mu_ref.l.at(x, y), mu_ref.a.at(x, y),
                                  mu_ref.b.at(x, y), mu_dist.l.at(x, y),
                                  mu_dist.a.at(x, y), mu_dist.b.at(x, y), params);
      out.at(x, y) = std::min(de, params.cap);
    }
  }
  return out;
}

Plane euclidean_color_map(const LabImage& mu_ref, const LabImage& mu_dist) {
  if (!mu_ref.same_dims(mu_dist)) {
    throw std::invalid_argument("euclidean_color_map: dimension mismatch");
  }
  const int w = mu_ref.width();
  const int h = mu_ref.height();
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = (std::fabs(mu_ref.l.at(x, y) - mu_dist.l.at(x, y)) +
                      std::fabs(mu_ref.a.at(x, y) - mu_dist.a.at(x, y)) +
                      std::fabs(mu_ref.b.at(x, y) - mu_dist.b.at(x, y))) /
                     3.0;
    }
  }
  return out;
}

}  // namespace csv
