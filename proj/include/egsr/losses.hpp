#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egsr/geometry.hpp"
#include "egsr/hull.hpp"
#include "egsr/kdtree.hpp"

namespace egsr {

/// Weights of total = alpha * chamfer + beta * hausdorff + gamma * smoothness.
struct LossWeights {
  double alpha = 1e-5;
  double beta = 1e-2;
  double gamma = 1e-2;

  void validate() const;
};

/// Sum of squared nearest-neighbour distances in both directions, not
/// normalized by set size.
double chamfer_loss(std::span<const Point2> r, std::span<const Point2> p);
double chamfer_loss(const PointSet2& r, const PointSet2& p);

/// max(d(R, P), d(P, R)) with unsquared nearest-neighbour distances.
double hausdorff_loss(std::span<const Point2> r, std::span<const Point2> p);
double hausdorff_loss(const PointSet2& r, const PointSet2& p);

/// Sum over the open vertex chain of |g_{i+1} - g_i| where g_i = p_{i+1} - p_i.
/// The closing edge back to the first vertex is not part of the chain.
double gradient_smooth_loss(std::span<const Point2> vertices);
double gradient_smooth_loss(const HullPolygon& hull);

enum class HausdorffDirection { EdgeToHull, HullToEdge };

/// Pair realising the Hausdorff value. On equal directed maxima the
/// edge-to-hull direction wins; within a direction the lowest index wins.
struct HausdorffPair {
  HausdorffDirection direction = HausdorffDirection::EdgeToHull;
  std::size_t edge_index = 0;
  std::size_t hull_index = 0;
  double distance = 0.0;
};

struct MatchInfo {
  /// Nearest hull vertex for every edge point.
  std::vector<std::size_t> edge_to_hull;
  /// Nearest edge point for every hull vertex.
  std::vector<std::size_t> hull_to_edge;
  HausdorffPair hausdorff;
};

struct LossReport {
  double l_cd = 0.0;
  double l_hd = 0.0;
  double l_gs = 0.0;
  double total = 0.0;
  /// d total / d vertex with matches held fixed.
  std::vector<Point2> grad;
  MatchInfo matches;
};

/// Edge map prepared for repeated loss evaluation (indexed once).
class EdgeTarget {
 public:
  explicit EdgeTarget(const PointSet2& edges);

  std::span<const Point2> points() const { return points_; }
  const SpatialIndex2& index() const { return index_; }

 private:
  std::vector<Point2> points_;
  SpatialIndex2 index_;
};

LossReport combined_loss(const EdgeTarget& edges, std::span<const Point2> vertices, const LossWeights& w);
LossReport combined_loss(const PointSet2& r_edge, const HullPolygon& hull, const LossWeights& w);

}  // namespace egsr
