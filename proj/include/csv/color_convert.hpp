#pragma once

#include <array>
#include <cstddef>

#include "csv/plane.hpp"

namespace csv {

/// sRGB (D65, 2 degree observer) to CIELAB. Inputs are clamped to [0,255];
/// `clamped`, when given, receives the number of clamped samples.
LabImage srgb_to_lab(const RgbImage& img, std::size_t* clamped = nullptr);

std::array<double, 3> srgb_to_lab(double r, double g, double b);

/// Inverse transform; output channels clamped to [0,255].
RgbImage lab_to_srgb(const LabImage& img);

std::array<double, 3> lab_to_srgb(double l, double a, double b);

/// C = sqrt(a*^2 + b*^2), H = atan2(b*, a*) in degrees, normalized to
/// [0, 360); H is 0 when C is 0.
LchImage lab_to_lch(const LabImage& img);

std::array<double, 3> lab_to_lch(double l, double a, double b);

}  // namespace csv
