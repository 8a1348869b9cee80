#include "egsr/camera.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <string>

namespace egsr {

namespace {

Eigen::Vector3d to_eigen(Point3 p) { return {p.x, p.y, p.z}; }

void check_rigid(const Eigen::Matrix4d& m, double tolerance) {
  if (!m.allFinite()) throw Error(ErrorCode::InvalidCalibration, "extrinsic matrix has non-finite entries");
  const Eigen::RowVector4d bottom(0.0, 0.0, 0.0, 1.0);
  if ((m.row(3) - bottom).cwiseAbs().maxCoeff() > tolerance) {
    throw Error(ErrorCode::InvalidCalibration, "extrinsic bottom row must be [0 0 0 1]");
  }
  const Eigen::Matrix3d r = m.topLeftCorner<3, 3>();
  const double err = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (err > tolerance) {
    throw Error(ErrorCode::InvalidCalibration,
                "rotation block is not orthonormal (max |R^T R - I| = " + std::to_string(err) + ")");
  }
  if (r.determinant() <= 0.0) throw Error(ErrorCode::InvalidCalibration, "rotation block has determinant <= 0");
}

}  // namespace

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

Extrinsics::Extrinsics(const Eigen::Matrix4d& m, double tolerance) : m_(m) { check_rigid(m_, tolerance); }

Extrinsics Extrinsics::translation(double tx, double ty, double tz) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topRightCorner<3, 1>() << tx, ty, tz;
  return Extrinsics(m);
}

Extrinsics Extrinsics::from_rotation_translation(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return Extrinsics(m);
}

Extrinsics Extrinsics::orthonormalized(const Eigen::Matrix4d& m, double tolerance) {
  check_rigid(m, tolerance);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.topLeftCorner<3, 3>(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix4d snapped = m;
  snapped.topLeftCorner<3, 3>() = svd.matrixU() * svd.matrixV().transpose();
  snapped.row(3) << 0.0, 0.0, 0.0, 1.0;
  return Extrinsics(snapped);
}

Extrinsics Extrinsics::inverse() const {
  const Eigen::Matrix3d rt = rotation().transpose();
  Eigen::Matrix4d inv = Eigen::Matrix4d::Identity();
  inv.topLeftCorner<3, 3>() = rt;
  inv.topRightCorner<3, 1>() = -rt * translation();
  Extrinsics out;
  out.m_ = inv;
  return out;
}

Extrinsics Extrinsics::operator*(const Extrinsics& rhs) const {
  Extrinsics out;
  out.m_ = m_ * rhs.m_;
  out.m_.row(3) << 0.0, 0.0, 0.0, 1.0;
  return out;
}

CameraRig::CameraRig(Intrinsics k_rgb, Extrinsics e_rgb, Extrinsics e_tof, int width, int height)
    : k_(k_rgb), e_rgb_(e_rgb), e_tof_(e_tof), tof_to_rgb_(e_rgb.inverse() * e_tof), width_(width), height_(height) {
  if (!(k_.fx > 0.0) || !(k_.fy > 0.0)) throw Error(ErrorCode::InvalidCalibration, "focal lengths must be positive");
  if (!std::isfinite(k_.cx) || !std::isfinite(k_.cy) || !std::isfinite(k_.fx) || !std::isfinite(k_.fy)) {
    throw Error(ErrorCode::InvalidCalibration, "intrinsics must be finite");
  }
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::InvalidCalibration, "image size must be at least 1x1");
}

Point3 tof_to_rgb_frame(Point3 p, const CameraRig& rig) {
  const auto& t = rig.tof_to_rgb();
  const Eigen::Vector3d q = t.rotation() * to_eigen(p) + t.translation();
  return {q.x(), q.y(), q.z()};
}

std::optional<Point2> try_project(Point3 p, const CameraRig& rig) {
  const Point3 q = tof_to_rgb_frame(p, rig);
  if (!(q.z > CameraRig::kNearPlane)) return std::nullopt;
  const auto& k = rig.intrinsics();
  return Point2{k.fx * q.x / q.z + k.cx, k.fy * q.y / q.z + k.cy};
}

Point2 project(Point3 p, const CameraRig& rig) {
  if (auto uv = try_project(p, rig)) return *uv;
  throw Error(ErrorCode::BehindCamera, "point is at or behind the RGB camera near plane");
}

Projection project_cloud(const PointCloud3& cloud, const CameraRig& rig) {
  std::vector<Point2> pts;
  std::vector<std::size_t> index_map;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto uv = try_project(cloud[i], rig);
    if (!uv || !rig.in_frame(*uv)) continue;
    pts.push_back(*uv);
    index_map.push_back(i);
  }
  if (pts.empty()) throw Error(ErrorCode::AllPointsCulled, "no point projects inside the image");
  const std::size_t culled = cloud.size() - pts.size();
  return {PointSet2(std::move(pts), PointSetRole::Projection), std::move(index_map), culled};
}

ProjectionJacobian projection_jacobian(Point3 p, const CameraRig& rig) {
  const Point3 q = tof_to_rgb_frame(p, rig);
  if (!(q.z > CameraRig::kNearPlane)) {
    throw Error(ErrorCode::BehindCamera, "jacobian undefined at or behind the near plane");
  }
  const auto& k = rig.intrinsics();
  const double iz = 1.0 / q.z;
  ProjectionJacobian pin;
  pin << k.fx * iz, 0.0, -k.fx * q.x * iz * iz,
         0.0, k.fy * iz, -k.fy * q.y * iz * iz;
  return pin * rig.tof_to_rgb().rotation();
}

}  // namespace egsr
