#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "egsr/error.hpp"

namespace egsr {

/// Camera-frame point in meters.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Image-plane point in pixels: u to the right, v downward, origin at the
/// center of the top-left pixel.
struct Point2 {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double squared_norm(Point3 a) { return dot(a, a); }
inline double norm(Point3 a) { return std::sqrt(squared_norm(a)); }

inline Point2 operator+(Point2 a, Point2 b) { return {a.u + b.u, a.v + b.v}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.u - b.u, a.v - b.v}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.u, s * a.v}; }
inline double dot(Point2 a, Point2 b) { return a.u * b.u + a.v * b.v; }
inline double cross(Point2 a, Point2 b) { return a.u * b.v - a.v * b.u; }
inline double squared_norm(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::sqrt(squared_norm(a)); }

inline bool is_finite(Point3 p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}
inline bool is_finite(Point2 p) { return std::isfinite(p.u) && std::isfinite(p.v); }

/// Ordered, non-empty, immutable set of finite 3D points.
class PointCloud3 {
 public:
  explicit PointCloud3(std::vector<Point3> points);

  std::span<const Point3> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const PointCloud3&, const PointCloud3&) = default;

 private:
  std::vector<Point3> points_;
};

enum class PointSetRole { EdgeMap, Projection, Hull };

/// Immutable set of finite 2D points tagged with what it represents. May be
/// empty (an edge map of a featureless image is).
class PointSet2 {
 public:
  PointSet2() = default;
  PointSet2(std::vector<Point2> points, PointSetRole role);

  std::span<const Point2> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  PointSetRole role() const { return role_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const PointSet2&, const PointSet2&) = default;

 private:
  std::vector<Point2> points_;
  PointSetRole role_ = PointSetRole::Projection;
};

/// Result of removing near-duplicates: the surviving points and, for each,
/// the position it held in the input.
struct Deduplicated {
  std::vector<Point2> points;
  std::vector<std::size_t> kept;
};

/// Keeps the first occurrence of every group of points closer than `tolerance`.
Deduplicated deduplicate(std::span<const Point2> points, double tolerance);

}  // namespace egsr
