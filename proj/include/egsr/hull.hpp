#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egsr/geometry.hpp"

namespace egsr {

inline constexpr std::size_t kDefaultHullK = 20;
inline constexpr double kHullDedupeTolerance = 1e-9;
inline constexpr double kOnEdgeTolerance = 1e-9;

/// Counter-clockwise simple polygon (in u/v coordinates), closed implicitly.
struct HullPolygon {
  std::vector<Point2> vertices;
  /// Cloud index behind each vertex.
  std::vector<std::size_t> source_indices;
  /// Neighbour count that produced a valid hull.
  std::size_t k_used = 0;
};

/// k-nearest-neighbour concave hull (Moreira & Santos boundary walk).
///
/// Starts at the lowest-v point (ties: lowest u) and repeatedly steps to the
/// candidate among the k nearest unused points with the largest clockwise
/// turn from the previous edge whose new edge crosses no existing edge. If a
/// walk gets stuck or leaves a point outside, k grows by one and the walk
/// restarts. `index_map[i]` is the cloud index of `points[i]`; pass an empty
/// span for the identity. k is clamped to the number of distinct points
/// minus one.
HullPolygon concave_hull(const PointSet2& points, std::span<const std::size_t> index_map,
                         std::size_t k = kDefaultHullK);

HullPolygon concave_hull(const PointSet2& points, std::size_t k = kDefaultHullK);

/// True iff no two non-adjacent edges touch.
bool polygon_is_simple(std::span<const Point2> polygon);
bool polygon_is_simple(const HullPolygon& poly);

bool contains_all(std::span<const Point2> polygon, std::span<const Point2> points);
bool contains_all(const HullPolygon& poly, const PointSet2& points);

}  // namespace egsr
