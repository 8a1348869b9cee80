#pragma once

#include <cstddef>
#include <vector>

#include "egsr/error.hpp"

namespace egsr {

/// Row-major grayscale image with intensities in [0, 1].
class GrayImage {
 public:
  GrayImage(int width, int height, std::vector<double> pixels);
  GrayImage(int width, int height, double fill);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int col, int row) const { return pixels_[index(col, row)]; }
  /// Edge-clamped access.
  double clamped(int col, int row) const;
  const std::vector<double>& pixels() const { return pixels_; }

  GrayImage transposed() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  std::vector<double> pixels_;
};

}  // namespace egsr
