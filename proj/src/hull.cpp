#include "egsr/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "egsr/predicates.hpp"

namespace egsr {

namespace {

/// Clockwise angle, in [0, 2 pi), that turns `back` onto `dir`.
double clockwise_angle(Point2 back, Point2 dir) {
  double a = std::atan2(cross(dir, back), dot(dir, back));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

struct Candidate {
  std::size_t index;
  double d2;
  double angle;
};

std::optional<std::vector<std::size_t>> walk(std::span<const Point2> pts, std::size_t k) {
  const std::size_t n = pts.size();
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i].v < pts[first].v || (pts[i].v == pts[first].v && pts[i].u < pts[first].u)) first = i;
  }

  std::vector<bool> available(n, true);
  available[first] = false;
  std::size_t remaining = n - 1;
  std::vector<std::size_t> hull{first};
  std::size_t current = first;
  Point2 back{-1.0, 0.0};
  std::vector<Candidate> cands;
  cands.reserve(n);

  for (std::size_t step = 2; remaining > 0; ++step) {
    // The start point becomes eligible again once the closing edge can no
    // longer collapse the polygon.
    if (step == 5) {
      available[first] = true;
      ++remaining;
    }
    cands.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (available[i]) cands.push_back({i, squared_norm(pts[i] - pts[current]), 0.0});
    }
    const std::size_t take = std::min(k, cands.size());
    auto by_distance = [](const Candidate& a, const Candidate& b) {
      return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
    };
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(take), cands.end(), by_distance);
    cands.resize(take);
    for (auto& c : cands) c.angle = clockwise_angle(back, pts[c.index] - pts[current]);
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
      if (a.angle != b.angle) return a.angle > b.angle;
      return by_distance(a, b);
    });

    std::optional<std::size_t> chosen;
    for (const auto& c : cands) {
      const bool closing = c.index == first;
      const Point2 a = pts[current];
      const Point2 b = pts[c.index];
      bool crosses = false;
      // hull.back() is `current`; its incoming edge is adjacent to the new one.
      for (std::size_t j = closing ? 1 : 0; j + 2 < hull.size() && !crosses; ++j) {
        crosses = segments_intersect(a, b, pts[hull[j]], pts[hull[j + 1]]);
      }
      if (!crosses) {
        chosen = c.index;
        break;
      }
    }
    if (!chosen) return std::nullopt;
    if (*chosen == first) break;
    hull.push_back(*chosen);
    available[*chosen] = false;
    --remaining;
    back = pts[current] - pts[*chosen];
    current = *chosen;
  }
  if (hull.size() < 3) return std::nullopt;

  std::vector<Point2> poly;
  poly.reserve(hull.size());
  for (std::size_t i : hull) poly.push_back(pts[i]);
  if (!polygon_is_simple(poly) || !contains_all(poly, pts)) return std::nullopt;
  return hull;
}

}  // namespace

HullPolygon concave_hull(const PointSet2& points, std::span<const std::size_t> index_map, std::size_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "concave hull needs k >= 3");
  if (!index_map.empty() && index_map.size() != points.size()) {
    throw Error(ErrorCode::InvalidArgument, "index map length does not match point count");
  }
  const Deduplicated uniq = deduplicate(points.points(), kHullDedupeTolerance);
  const std::size_t n = uniq.points.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints, "need at least 3 distinct points, got " + std::to_string(n));
  }
  const std::span<const Point2> pts = uniq.points;
  {
    std::size_t other = 1;
    bool collinear = true;
    for (std::size_t i = 2; i < n && collinear; ++i) collinear = orient2d(pts[0], pts[other], pts[i]) == 0;
    if (collinear) throw Error(ErrorCode::DegenerateCollinear, "all points are collinear");
  }

  for (std::size_t kk = std::clamp(k, std::min<std::size_t>(3, n - 1), n - 1); kk <= n - 1; ++kk) {
    auto order = walk(pts, kk);
    if (!order) continue;
    HullPolygon poly;
    poly.k_used = kk;
    for (std::size_t i : *order) {
      poly.vertices.push_back(pts[i]);
      const std::size_t original = uniq.kept[i];
      poly.source_indices.push_back(index_map.empty() ? original : index_map[original]);
    }
    if (signed_area(poly.vertices) < 0.0) {
      std::reverse(poly.vertices.begin() + 1, poly.vertices.end());
      std::reverse(poly.source_indices.begin() + 1, poly.source_indices.end());
    }
    return poly;
  }
  throw Error(ErrorCode::HullFailed, "no neighbour count produced a valid hull");
}

HullPolygon concave_hull(const PointSet2& points, std::size_t k) { return concave_hull(points, {}, k); }

bool polygon_is_simple(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    // Adjacent edges may only share their common vertex, never fold back.
    const Point2 prev = polygon[(i + n - 1) % n];
    const Point2 cur = polygon[i];
    const Point2 next = polygon[(i + 1) % n];
    if (orient2d(prev, cur, next) == 0 && dot(prev - cur, next - cur) > 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a1 = polygon[i];
    const Point2 a2 = polygon[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // wrap-around neighbours share polygon[0]
      if (segments_intersect(a1, a2, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool polygon_is_simple(const HullPolygon& poly) { return polygon_is_simple(poly.vertices); }

bool contains_all(std::span<const Point2> polygon, std::span<const Point2> points) {
  return std::all_of(points.begin(), points.end(),
                     [&](Point2 p) { return point_in_polygon(p, polygon, kOnEdgeTolerance); });
}

bool contains_all(const HullPolygon& poly, const PointSet2& points) {
  return contains_all(poly.vertices, points.points());
}

}  // namespace egsr
