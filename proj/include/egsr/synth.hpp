#pragma once

#include "egsr/camera.hpp"
#include "egsr/geometry.hpp"
#include "egsr/image.hpp"

namespace egsr {

enum class SceneShape { SquarePlane, Box, Sphere };

/// Synthetic object placed in the depth-sensor frame.
///
/// SquarePlane: extent x extent square in the pose's local z = 0 plane.
/// Box: cube of side `extent` centered on the pose origin.
/// Sphere: diameter `extent` centered on the pose origin.
struct SceneSpec {
  SceneShape shape = SceneShape::SquarePlane;
  Extrinsics pose;
  double extent = 1.0;
  /// Surface samples per square meter.
  double density = 1e4;
  double foreground = 1.0;
  double background = 0.0;

  void validate() const;
};

struct SyntheticScene {
  PointCloud3 gt_cloud;
  GrayImage rgb;
};

/// Samples the camera-visible surface on a regular grid (Fibonacci lattice
/// for spheres) and ray-casts a hard-edged silhouette into the RGB image.
/// Throws ShapeOutOfFrame when any sample fails to project into the image.
SyntheticScene synth_scene(const SceneSpec& spec, const CameraRig& rig);

}  // namespace egsr
