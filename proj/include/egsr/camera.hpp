#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "egsr/geometry.hpp"

namespace egsr {

/// Pinhole intrinsics with zero skew.
struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d matrix() const;
};

/// Rigid 4x4 transform. Construction checks that the rotation block is
/// orthonormal with determinant +1 and the bottom row is [0 0 0 1].
class Extrinsics {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  Extrinsics() : m_(Eigen::Matrix4d::Identity()) {}
  explicit Extrinsics(const Eigen::Matrix4d& m, double tolerance = kDefaultTolerance);

  static Extrinsics identity() { return Extrinsics(); }
  static Extrinsics translation(double tx, double ty, double tz);
  static Extrinsics from_rotation_translation(const Eigen::Matrix3d& r, const Eigen::Vector3d& t);
  /// Accepts a nearly rigid matrix (rotation error up to `tolerance`) and
  /// snaps its rotation block to the nearest orthonormal matrix.
  static Extrinsics orthonormalized(const Eigen::Matrix4d& m, double tolerance);

  const Eigen::Matrix4d& matrix() const { return m_; }
  Eigen::Matrix3d rotation() const { return m_.topLeftCorner<3, 3>(); }
  Eigen::Vector3d translation() const { return m_.topRightCorner<3, 1>(); }

  /// Closed-form rigid inverse [R^T | -R^T t].
  Extrinsics inverse() const;
  Extrinsics operator*(const Extrinsics& rhs) const;

 private:
  Eigen::Matrix4d m_;
};

/// Calibrated RGB-D rig. Points are given in the depth (TOF) sensor frame and
/// mapped to RGB pixels through E_rgb^-1 * E_tof followed by K_rgb.
class CameraRig {
 public:
  /// Points at or closer than this depth (RGB frame, meters) do not project.
  static constexpr double kNearPlane = 1e-6;

  CameraRig(Intrinsics k_rgb, Extrinsics e_rgb, Extrinsics e_tof, int width, int height);

  const Intrinsics& intrinsics() const { return k_; }
  const Extrinsics& e_rgb() const { return e_rgb_; }
  const Extrinsics& e_tof() const { return e_tof_; }
  /// Cached E_rgb^-1 * E_tof.
  const Extrinsics& tof_to_rgb() const { return tof_to_rgb_; }
  int width() const { return width_; }
  int height() const { return height_; }

  bool in_frame(Point2 p) const {
    return p.u >= 0.0 && p.u < width_ && p.v >= 0.0 && p.v < height_;
  }

 private:
  Intrinsics k_;
  Extrinsics e_rgb_;
  Extrinsics e_tof_;
  Extrinsics tof_to_rgb_;
  int width_;
  int height_;
};

Point3 tof_to_rgb_frame(Point3 p, const CameraRig& rig);

/// std::nullopt when the point is at or behind the near plane.
std::optional<Point2> try_project(Point3 p, const CameraRig& rig);

/// Throws Error(BehindCamera) when the point does not project.
Point2 project(Point3 p, const CameraRig& rig);

struct Projection {
  PointSet2 points;
  /// index_map[i] is the cloud index that produced points[i].
  std::vector<std::size_t> index_map;
  std::size_t culled = 0;
};

/// Projects every point that lands in front of the camera and inside the
/// image. Throws AllPointsCulled when nothing survives.
Projection project_cloud(const PointCloud3& cloud, const CameraRig& rig);

using ProjectionJacobian = Eigen::Matrix<double, 2, 3>;

/// d(u, v) / d(x, y, z) of the full TOF-to-pixel chain.
ProjectionJacobian projection_jacobian(Point3 p, const CameraRig& rig);

}  // namespace egsr
