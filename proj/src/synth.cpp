#include "egsr/synth.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace egsr {

void SceneSpec::validate() const {
  if (!(extent > 0.0)) throw Error(ErrorCode::InvalidArgument, "scene extent must be positive");
  if (!(density > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample density must be positive");
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(foreground) || !unit(background)) throw Error(ErrorCode::InvalidArgument, "intensities must lie in [0, 1]");
  if (foreground == background) throw Error(ErrorCode::InvalidArgument, "foreground and background must differ");
}

namespace {

using Vec3 = Eigen::Vector3d;

Point3 pt(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

struct Ray {
  Vec3 origin;
  Vec3 dir;
};

/// Shape in its local frame; rays and samples are mapped through the pose.
class Shape {
 public:
  Shape(const SceneSpec& spec) : spec_(spec), r_(spec.pose.rotation()), t_(spec.pose.translation()) {}

  std::vector<Point3> visible_samples(const Vec3& camera) const {
    std::vector<Point3> out;
    const double half = 0.5 * spec_.extent;
    switch (spec_.shape) {
      case SceneShape::SquarePlane:
        grid_face(Vec3::UnitX(), Vec3::UnitY(), Vec3::Zero(), out);
        break;
      case SceneShape::Box:
        for (int axis = 0; axis < 3; ++axis) {
          for (double sign : {-1.0, 1.0}) {
            Vec3 normal = Vec3::Zero();
            normal[axis] = sign;
            const Vec3 center = half * normal;
            // Only faces turned towards the camera are visible.
            if ((r_ * normal).dot(to_world(center) - camera) >= 0.0) continue;
            Vec3 a = Vec3::Zero();
            Vec3 b = Vec3::Zero();
            a[(axis + 1) % 3] = 1.0;
            b[(axis + 2) % 3] = 1.0;
            grid_face(a, b, center, out);
          }
        }
        break;
      case SceneShape::Sphere: {
        const double area = std::numbers::pi * spec_.extent * spec_.extent;
        const auto n = static_cast<std::size_t>(std::max(1.0, std::round(spec_.density * area)));
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < n; ++i) {
          const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
          const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
          const double phi = golden * static_cast<double>(i);
          const Vec3 dir = (r_ * Vec3(rho * std::cos(phi), rho * std::sin(phi), z)).normalized();
          const Vec3 p = t_ + half * dir;
          if (dir.dot(p - camera) < 0.0) out.push_back(pt(p));
        }
        break;
      }
    }
    return out;
  }

  bool hit(const Ray& world) const {
    const Vec3 o = r_.transpose() * (world.origin - t_);
    const Vec3 d = r_.transpose() * world.dir;
    const double half = 0.5 * spec_.extent;
    switch (spec_.shape) {
      case SceneShape::SquarePlane: {
        if (d.z() == 0.0) return false;
        const double t = -o.z() / d.z();
        if (!(t > 0.0)) return false;
        const Vec3 p = o + t * d;
        return std::abs(p.x()) <= half && std::abs(p.y()) <= half;
      }
      case SceneShape::Box: {
        double t0 = 0.0;
        double t1 = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 3; ++a) {
          if (d[a] == 0.0) {
            if (std::abs(o[a]) > half) return false;
            continue;
          }
          double ta = (-half - o[a]) / d[a];
          double tb = (half - o[a]) / d[a];
          if (ta > tb) std::swap(ta, tb);
          t0 = std::max(t0, ta);
          t1 = std::min(t1, tb);
          if (t0 > t1) return false;
        }
        return true;
      }
      case SceneShape::Sphere: {
        const double b = o.dot(d);
        const double c = o.squaredNorm() - half * half;
        const double disc = b * b - d.squaredNorm() * c;
        if (disc < 0.0) return false;
        const double far = (-b + std::sqrt(disc)) / d.squaredNorm();
        return far > 0.0;
      }
    }
    return false;
  }

 private:
  Vec3 to_world(const Vec3& local) const { return r_ * local + t_; }

  /// Cell-centered grid over the square face spanned by unit axes a, b.
  void grid_face(const Vec3& a, const Vec3& b, const Vec3& center, std::vector<Point3>& out) const {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::round(spec_.extent * std::sqrt(spec_.density))));
    const double spacing = spec_.extent / static_cast<double>(n);
    const double start = -0.5 * spec_.extent + 0.5 * spacing;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vec3 local = center + (start + spacing * static_cast<double>(j)) * a +
                           (start + spacing * static_cast<double>(i)) * b;
        out.push_back(pt(to_world(local)));
      }
    }
  }

  SceneSpec spec_;
  Eigen::Matrix3d r_;
  Vec3 t_;
};

}  // namespace

SyntheticScene synth_scene(const SceneSpec& spec, const CameraRig& rig) {
  spec.validate();
  const Shape shape(spec);
  const Eigen::Matrix3d r = rig.tof_to_rgb().rotation();
  const Vec3 t = rig.tof_to_rgb().translation();
  const Vec3 camera = -r.transpose() * t;

  std::vector<Point3> samples = shape.visible_samples(camera);
  if (samples.empty()) throw Error(ErrorCode::ShapeOutOfFrame, "no visible surface samples");
  for (const auto& p : samples) {
    const auto uv = try_project(p, rig);
    if (!uv || !rig.in_frame(*uv)) throw Error(ErrorCode::ShapeOutOfFrame, "shape does not fit inside the image");
  }

  const auto& k = rig.intrinsics();
  const int w = rig.width();
  const int h = rig.height();
  std::vector<double> pixels(static_cast<std::size_t>(w) * h, spec.background);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const Vec3 d_rgb((col - k.cx) / k.fx, (row - k.cy) / k.fy, 1.0);
      if (shape.hit({camera, r.transpose() * d_rgb})) pixels[static_cast<std::size_t>(row) * w + col] = spec.foreground;
    }
  }
  return {PointCloud3(std::move(samples)), GrayImage(w, h, std::move(pixels))};
}

}  // namespace egsr
