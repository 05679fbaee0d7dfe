#pragma once

#include <filesystem>

#include "csv/plane.hpp"

namespace csv {

/// Decode an 8-bit PNG/BMP/JPEG file into real-valued channels in [0,255].
RgbImage load_image(const std::filesystem::path& path);

void save_image_png(const RgbImage& img, const std::filesystem::path& path);

/// Min-max normalized 8-bit grayscale dump of a feature map.
void save_map_png(const Plane& map, const std::filesystem::path& path);

/// In-memory JPEG encode/decode at the given quality (1..100).
RgbImage jpeg_roundtrip(const RgbImage& img, int quality);

}  // namespace csv
