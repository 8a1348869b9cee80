#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "egsr/geometry.hpp"

namespace egsr {

struct Neighbor {
  std::size_t index = 0;
  double squared_distance = 0.0;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact nearest-neighbour index over a fixed point snapshot.
///
/// Results agree bit-for-bit with an exhaustive scan that computes
/// sum_i (q_i - p_i)^2 in axis order: ties on squared distance go to the
/// lowest original index. The tree is immutable once built, so concurrent
/// queries are safe.
template <std::size_t Dim>
class KdTree {
 public:
  using Coord = std::array<double, Dim>;

  explicit KdTree(std::vector<Coord> points);

  std::size_t size() const { return points_.size(); }
  const Coord& point(std::size_t i) const { return points_[i]; }

  Neighbor nearest(const Coord& query) const;

  /// The k closest points, ascending by (distance, index).
  std::vector<Neighbor> knn(const Coord& query, std::size_t k) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t axis = 0;
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Coord> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

extern template class KdTree<2>;
extern template class KdTree<3>;

using SpatialIndex2 = KdTree<2>;
using SpatialIndex3 = KdTree<3>;

inline std::array<double, 2> coords(Point2 p) { return {p.u, p.v}; }
inline std::array<double, 3> coords(Point3 p) { return {p.x, p.y, p.z}; }

SpatialIndex2 build_index(std::span<const Point2> points);
SpatialIndex2 build_index(const PointSet2& points);
SpatialIndex3 build_index(std::span<const Point3> points);
SpatialIndex3 build_index(const PointCloud3& cloud);

template <std::size_t Dim>
inline double squared_distance(const std::array<double, Dim>& a, const std::array<double, Dim>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < Dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace egsr
