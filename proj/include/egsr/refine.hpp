#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "egsr/camera.hpp"
#include "egsr/densify.hpp"
#include "egsr/edges.hpp"
#include "egsr/geometry.hpp"
#include "egsr/image.hpp"
#include "egsr/losses.hpp"

namespace egsr {

struct RefineConfig {
  std::size_t max_iters = 200;
  /// Iterations between hull recomputations (T).
  std::size_t hull_refresh_period = 10;
  /// First trial step of each line search, as a fraction of the cloud's
  /// half-extent (the normalize_to_unit scale).
  double initial_step = 0.01;
  double backtrack_factor = 0.5;
  double min_step = 1e-8;
  LossWeights weights;
  std::size_t hull_k = kDefaultHullK;
  /// Restrict displacements to the RGB camera's constant-depth plane.
  bool constant_depth = false;
  /// Stop when a hull window improves the loss by less than this fraction.
  double relative_tolerance = 1e-6;

  void validate() const;
};

struct RefineRecord {
  std::size_t iteration = 0;
  std::size_t window = 0;
  /// Loss terms after this iteration (unchanged when the step was rejected).
  double total = 0.0;
  double l_cd = 0.0;
  double l_hd = 0.0;
  double l_gs = 0.0;
  /// Accepted step length in the scaled units above; zero when rejected.
  double step = 0.0;
  bool accepted = false;
  std::size_t hull_size = 0;
  std::size_t culled = 0;
};

struct RefineTrace {
  std::vector<RefineRecord> records;
  /// Combined loss on the hull of the input cloud.
  double initial_loss = 0.0;
  /// Combined loss on a freshly computed hull of the output cloud.
  double final_loss = 0.0;
  std::size_t accepted_steps = 0;
  std::string stop_reason;
};

struct RefineResult {
  PointCloud3 cloud;
  RefineTrace trace;
};

/// Moves the 3D points behind the projected concave hull so the hull
/// approaches the edge map under the combined loss.
///
/// Hull membership, vertex order and nearest-neighbour matches are frozen
/// between refreshes; the 2D loss gradient reaches 3D through the projection
/// Jacobian and each step is a backtracking line search on the true loss.
/// Points that are not hull vertices are never touched.
RefineResult refine(const PointCloud3& cloud, const PointSet2& edge_map, const CameraRig& rig,
                    const RefineConfig& cfg = {});

/// canny -> densify -> refine.
RefineResult superres(const PointCloud3& sparse, const GrayImage& rgb, const CameraRig& rig,
                      const DensifyConfig& dcfg = {}, const RefineConfig& rcfg = {},
                      const CannyParams& ccfg = {});

}  // namespace egsr
