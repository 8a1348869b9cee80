#pragma once

#include <vector>

#include "egsr/geometry.hpp"
#include "egsr/image.hpp"

namespace egsr {

struct CannyParams {
  double sigma = 1.4;
  /// Hysteresis thresholds as fractions of the image's maximum gradient
  /// magnitude.
  double low = 0.1;
  double high = 0.2;

  void validate() const;
};

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;
  /// atan2(gy, gx), in (-pi, pi].
  std::vector<double> direction;

  double at(int col, int row) const { return magnitude[static_cast<std::size_t>(row) * width + col]; }
};

/// Separable convolution with a normalized Gaussian of radius ceil(3 sigma),
/// edge-clamped at the borders.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

/// Sobel 3x3 gradients.
GradientField gradient(const GrayImage& img);

/// Thin-edge mask: true where the magnitude is a local maximum along the
/// gradient direction quantized to 0/45/90/135 degrees. Plateaus keep only
/// the pixel on the negative side (strictly greater than the negative
/// neighbour, at least the positive one) so a symmetric ridge yields one
/// pixel, not two.
std::vector<bool> non_maximum_suppression(const GradientField& field);

struct CannyResult {
  PointSet2 edges;
  GradientField field;
  std::vector<bool> thinned;
  double max_magnitude = 0.0;
  int border = 0;
};

CannyResult canny_detailed(const GrayImage& img, const CannyParams& params = {});

/// Edge pixel centers (u = column, v = row), in row-major order.
PointSet2 canny(const GrayImage& img, const CannyParams& params = {});

/// Width of the border band excluded from edge output.
int canny_border(double sigma);

}  // namespace egsr
