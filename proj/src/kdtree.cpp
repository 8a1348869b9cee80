#include "egsr/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace egsr {

namespace {

constexpr std::uint32_t kLeafSize = 8;

bool closer(double d2a, std::size_t ia, double d2b, std::size_t ib) {
  return d2a < d2b || (d2a == d2b && ia < ib);
}

}  // namespace

template <std::size_t Dim>
KdTree<Dim>::KdTree(std::vector<Coord> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::EmptyInput, "cannot index an empty point set");
  if (points_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::InvalidArgument, "point set too large to index");
  }
  order_.resize(points_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(2 * points_.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(order_.size()));
}

template <std::size_t Dim>
std::int32_t KdTree<Dim>::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1, 0, 0.0});
  if (end - begin <= kLeafSize) return id;

  Coord lo = points_[order_[begin]];
  Coord hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    const auto& p = points_[order_[i]];
    for (std::size_t d = 0; d < Dim; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  std::uint8_t axis = 0;
  for (std::size_t d = 1; d < Dim; ++d) {
    if (hi[d] - lo[d] > hi[axis] - lo[axis]) axis = static_cast<std::uint8_t>(d);
  }
  if (hi[axis] == lo[axis]) return id;  // all coincident: keep as a leaf

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];

  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

template <std::size_t Dim>
Neighbor KdTree<Dim>::nearest(const Coord& query) const {
  double best_d2 = std::numeric_limits<double>::infinity();
  std::size_t best = std::numeric_limits<std::size_t>::max();

  // Explicit stack of (node, lower bound on squared distance to its region).
  std::vector<std::pair<std::int32_t, double>> stack;
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (bound > best_d2) continue;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        const double d2 = squared_distance(query, points_[idx]);
        if (closer(d2, idx, best_d2, best)) {
          best_d2 = d2;
          best = idx;
        }
      }
      continue;
    }
    const double diff = query[node.axis] - node.split;
    const double plane = diff * diff;
    // Left holds coordinates <= split, right holds >= split.
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    stack.emplace_back(far, std::max(bound, plane));
    stack.emplace_back(near, bound);
  }
  return {best, best_d2, std::sqrt(best_d2)};
}

template <std::size_t Dim>
std::vector<Neighbor> KdTree<Dim>::knn(const Coord& query, std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > points_.size()) {
    throw Error(ErrorCode::InsufficientPoints,
                "k = " + std::to_string(k) + " exceeds point count " + std::to_string(points_.size()));
  }
  struct Entry {
    double d2;
    std::size_t index;
  };
  // Max-heap on (d2, index): the top is the current worst kept candidate.
  auto worse = [](const Entry& a, const Entry& b) { return closer(a.d2, a.index, b.d2, b.index); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::vector<std::pair<std::int32_t, double>> stack;
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (heap.size() == k && bound > heap.top().d2) continue;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        const double d2 = squared_distance(query, points_[idx]);
        if (heap.size() < k) {
          heap.push({d2, idx});
        } else if (closer(d2, idx, heap.top().d2, heap.top().index)) {
          heap.pop();
          heap.push({d2, idx});
        }
      }
      continue;
    }
    const double diff = query[node.axis] - node.split;
    const double plane = diff * diff;
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    stack.emplace_back(far, std::max(bound, plane));
    stack.emplace_back(near, bound);
  }

  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    const Entry e = heap.top();
    heap.pop();
    out[i] = {e.index, e.d2, std::sqrt(e.d2)};
  }
  return out;
}

template class KdTree<2>;
template class KdTree<3>;

SpatialIndex2 build_index(std::span<const Point2> points) {
  std::vector<std::array<double, 2>> c;
  c.reserve(points.size());
  for (const auto& p : points) c.push_back(coords(p));
  return SpatialIndex2(std::move(c));
}

SpatialIndex2 build_index(const PointSet2& points) { return build_index(points.points()); }

SpatialIndex3 build_index(std::span<const Point3> points) {
  std::vector<std::array<double, 3>> c;
  c.reserve(points.size());
  for (const auto& p : points) c.push_back(coords(p));
  return SpatialIndex3(std::move(c));
}

SpatialIndex3 build_index(const PointCloud3& cloud) { return build_index(cloud.points()); }

}  // namespace egsr
