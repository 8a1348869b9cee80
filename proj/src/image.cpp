#include "egsr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace egsr {

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw Error(ErrorCode::InvalidArgument, "pixel count " + std::to_string(pixels_.size()) +
                                                " does not match " + std::to_string(width_) + "x" +
                                                std::to_string(height_));
  }
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidArgument, "pixel intensity outside [0, 1]");
  }
}

GrayImage::GrayImage(int width, int height, double fill)
    : GrayImage(width, height,
                std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                        static_cast<std::size_t>(std::max(height, 0)),
                                    fill)) {}

double GrayImage::clamped(int col, int row) const {
  return at(std::clamp(col, 0, width_ - 1), std::clamp(row, 0, height_ - 1));
}

GrayImage GrayImage::transposed() const {
  std::vector<double> out(pixels_.size());
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      out[static_cast<std::size_t>(c) * static_cast<std::size_t>(height_) + static_cast<std::size_t>(r)] = at(c, r);
    }
  }
  return GrayImage(height_, width_, std::move(out));
}

}  // namespace egsr
