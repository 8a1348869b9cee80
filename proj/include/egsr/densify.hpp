#pragma once

#include <cstddef>

#include "egsr/geometry.hpp"

namespace egsr {

struct DensifyConfig {
  /// Output holds exactly rate * input points.
  std::size_t rate = 4;
  /// Neighbours each point is interpolated with per round.
  std::size_t k_interp = 4;
  /// Midpoints closer than this to an existing point are dropped (meters).
  double dedupe_eps = 1e-9;

  void validate() const;
};

/// Deterministic upsampler: rounds of k-nearest-neighbour midpoint
/// insertion until enough new points exist, then voxel binning trims the
/// generated points to (rate - 1) * N. The input points come first in the
/// output, unchanged.
PointCloud3 densify(const PointCloud3& cloud, const DensifyConfig& cfg = {});

}  // namespace egsr
