#include "csv/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "csv/errors.hpp"

namespace csv {

namespace {

RgbImage from_mat(const cv::Mat& mat, const std::string& what) {
  if (mat.empty()) throw IoError("cannot decode image: " + what);
  if (mat.depth() != CV_8U) {
    throw IoError("only 8-bit-per-channel images are supported: " + what);
  }
  const int channels = mat.channels();
  if (channels != 1 && channels != 3 && channels != 4) {
    throw IoError("unsupported channel count in " + what);
  }
  const int w = mat.cols;
  const int h = mat.rows;
  RgbImage img{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    const unsigned char* row = mat.ptr<unsigned char>(y);
    for (int x = 0; x < w; ++x) {
      const unsigned char* px = row + static_cast<std::size_t>(x) * channels;
      if (channels == 1) {
        img.r.at(x, y) = img.g.at(x, y) = img.b.at(x, y) = px[0];
      } else {  // OpenCV decodes as BGR(A)
        img.b.at(x, y) = px[0];
        img.g.at(x, y) = px[1];
        img.r.at(x, y) = px[2];
      }
    }
  }
  return img;
}

cv::Mat to_mat(const RgbImage& img) {
  cv::Mat mat(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    cv::Vec3b* row = mat.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      const auto q = [](double v) {
        return static_cast<unsigned char>(
            std::clamp(std::lround(v), 0l, 255l));
      };
      row[x][0] = q(img.b.at(x, y));
      row[x][1] = q(img.g.at(x, y));
      row[x][2] = q(img.r.at(x, y));
    }
  }
  return mat;
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot read image: " + path.string());
  return from_mat(mat, path.string());
}

void save_image_png(const RgbImage& img, const std::filesystem::path& path) {
  if (!cv::imwrite(path.string(), to_mat(img))) {
    throw IoError("cannot write image: " + path.string());
  }
}

void save_map_png(const Plane& map, const std::filesystem::path& path) {
  double lo = map[0], hi = map[0];
  for (std::size_t i = 0; i < map.size(); ++i) {
    lo = std::min(lo, map[i]);
    hi = std::max(hi, map[i]);
  }
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  cv::Mat mat(map.height(), map.width(), CV_8UC1);
  for (int y = 0; y < map.height(); ++y) {
    unsigned char* row = mat.ptr<unsigned char>(y);
    for (int x = 0; x < map.width(); ++x) {
      row[x] = static_cast<unsigned char>(
          std::lround((map.at(x, y) - lo) * scale));
    }
  }
  if (!cv::imwrite(path.string(), mat)) {
    throw IoError("cannot write map: " + path.string());
  }
}

RgbImage jpeg_roundtrip(const RgbImage& img, int quality) {
  std::vector<unsigned char> buf;
  const std::vector<int> params{cv::IMWRITE_JPEG_QUALITY,
                                std::clamp(quality, 1, 100)};
  if (!cv::imencode(".jpg", to_mat(img), buf, params)) {
    throw IoError("JPEG encode failed");
  }
  cv::Mat decoded = cv::imdecode(buf, cv::IMREAD_COLOR);
  return from_mat(decoded, "jpeg buffer");
}

}  // namespace csv
