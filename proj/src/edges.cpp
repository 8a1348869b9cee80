#include "egsr/edges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace egsr {

void CannyParams::validate() const {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  if (!(low > 0.0) || !(low < high)) throw Error(ErrorCode::InvalidArgument, "thresholds must satisfy 0 < low < high");
}

int canny_border(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)) + 1; }

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  const int w = img.width();
  const int h = img.height();
  std::vector<double> tmp(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += kernel[i + radius] * img.clamped(c + i, r);
      tmp[static_cast<std::size_t>(r) * w + c] = acc;
    }
  }
  std::vector<double> out(tmp.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int rr = std::clamp(r + i, 0, h - 1);
        acc += kernel[i + radius] * tmp[static_cast<std::size_t>(rr) * w + c];
      }
      out[static_cast<std::size_t>(r) * w + c] = std::clamp(acc, 0.0, 1.0);
    }
  }
  return GrayImage(w, h, std::move(out));
}

GradientField gradient(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 3 || h < 3) throw Error(ErrorCode::ImageTooSmall, "gradient needs at least a 3x3 image");
  GradientField f;
  f.width = w;
  f.height = h;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  f.gx.assign(n, 0.0);
  f.gy.assign(n, 0.0);
  f.magnitude.assign(n, 0.0);
  f.direction.assign(n, 0.0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      auto p = [&](int dc, int dr) { return img.clamped(c + dc, r + dr); };
      const double gx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      f.gx[i] = gx;
      f.gy[i] = gy;
      f.magnitude[i] = std::sqrt(gx * gx + gy * gy);
      double theta = std::atan2(gy, gx);
      if (theta == -std::numbers::pi) theta = std::numbers::pi;
      f.direction[i] = theta;
    }
  }
  return f;
}

namespace {

struct Step {
  int dc;
  int dr;
};

Step quantize(double theta) {
  double deg = theta * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  if (deg < 22.5 || deg >= 157.5) return {1, 0};
  if (deg < 67.5) return {1, 1};
  if (deg < 112.5) return {0, 1};
  return {-1, 1};
}

}  // namespace

std::vector<bool> non_maximum_suppression(const GradientField& field) {
  const int w = field.width;
  const int h = field.height;
  std::vector<bool> keep(static_cast<std::size_t>(w) * h, false);
  for (int r = 1; r + 1 < h; ++r) {
    for (int c = 1; c + 1 < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      const double m = field.magnitude[i];
      if (!(m > 0.0)) continue;
      const Step s = quantize(field.direction[i]);
      const double behind = field.at(c - s.dc, r - s.dr);
      const double ahead = field.at(c + s.dc, r + s.dr);
      keep[i] = m > behind && m >= ahead;
    }
  }
  return keep;
}

CannyResult canny_detailed(const GrayImage& img, const CannyParams& params) {
  params.validate();
  if (img.width() < 3 || img.height() < 3) throw Error(ErrorCode::ImageTooSmall, "canny needs at least a 3x3 image");

  CannyResult res;
  res.field = gradient(gaussian_smooth(img, params.sigma));
  res.thinned = non_maximum_suppression(res.field);
  res.border = canny_border(params.sigma);
  const int w = img.width();
  const int h = img.height();
  for (double m : res.field.magnitude) res.max_magnitude = std::max(res.max_magnitude, m);
  if (!(res.max_magnitude > 0.0)) {
    res.edges = PointSet2({}, PointSetRole::EdgeMap);
    return res;
  }
  const double hi = params.high * res.max_magnitude;
  const double lo = params.low * res.max_magnitude;
  const int b = res.border;

  // 0 = rejected, 1 = weak candidate, 2 = accepted edge
  std::vector<unsigned char> state(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::size_t> stack;
  for (int r = b; r < h - b; ++r) {
    for (int c = b; c < w - b; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      if (!res.thinned[i]) continue;
      const double m = res.field.magnitude[i];
      if (m >= hi) {
        state[i] = 2;
        stack.push_back(i);
      } else if (m >= lo) {
        state[i] = 1;
      }
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int r = static_cast<int>(i / w);
    const int c = static_cast<int>(i % w);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr;
        const int cc = c + dc;
        if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
        const std::size_t j = static_cast<std::size_t>(rr) * w + cc;
        if (state[j] == 1) {
          state[j] = 2;
          stack.push_back(j);
        }
      }
    }
  }
  std::vector<Point2> pts;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (state[static_cast<std::size_t>(r) * w + c] == 2) pts.push_back({double(c), double(r)});
    }
  }
  res.edges = PointSet2(std::move(pts), PointSetRole::EdgeMap);
  return res;
}

PointSet2 canny(const GrayImage& img, const CannyParams& params) { return canny_detailed(img, params).edges; }

}  // namespace egsr
