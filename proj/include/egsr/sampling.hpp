#pragma once

#include <cstddef>

#include "egsr/geometry.hpp"

namespace egsr {

struct BinningResult {
  PointCloud3 cloud;
  /// Edge length of the voxels whose centroids were selected from. Zero when
  /// the input was returned unchanged.
  double voxel_size = 0.0;
  /// Occupied voxels before farthest-point selection trimmed to the target.
  std::size_t occupied_bins = 0;
};

/// Voxel-grid downsampling to exactly `target_count` points.
///
/// The voxel edge is bisected to the largest size that still leaves at least
/// `target_count` occupied bins; farthest-point selection over the bin
/// centroids then removes the surplus. Output keeps bin order (first
/// occurrence in the input).
BinningResult bin_downsample_detailed(const PointCloud3& cloud, std::size_t target_count);

PointCloud3 bin_downsample(const PointCloud3& cloud, std::size_t target_count);

struct Normalization {
  PointCloud3 cloud;
  /// normalized = (p - offset) / scale
  double scale = 1.0;
  Point3 offset;
};

/// Centers the bounding box on the origin and scales the largest absolute
/// coordinate to 1. Zero-extent clouds keep scale 1.
Normalization normalize_to_unit(const PointCloud3& cloud);

PointCloud3 apply_normalization(const PointCloud3& cloud, double scale, Point3 offset);
PointCloud3 denormalize(const PointCloud3& cloud, double scale, Point3 offset);

}  // namespace egsr
