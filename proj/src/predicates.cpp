#include "egsr/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace egsr {

namespace {

// Error-free transformations (Knuth TwoSum, FMA-based TwoProduct).
void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Adds `b` into a nonoverlapping expansion, keeping it nonoverlapping.
void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  for (double& component : e) {
    double sum = 0.0;
    double err = 0.0;
    two_sum(q, component, sum, err);
    component = err;
    q = sum;
  }
  e.push_back(q);
}

int expansion_sign(const std::vector<double>& e) {
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

int orient2d_exact(Point2 a, Point2 b, Point2 c) {
  // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx, every product exact
  // as a two-term expansion.
  const double terms[6][2] = {{a.u, b.v}, {-a.u, c.v}, {-c.u, b.v}, {-a.v, b.u}, {a.v, c.u}, {c.v, b.u}};
  std::vector<double> e;
  e.reserve(24);
  for (const auto& t : terms) {
    double p = 0.0;
    double err = 0.0;
    two_product(t[0], t[1], p, err);
    grow_expansion(e, err);
    grow_expansion(e, p);
  }
  return expansion_sign(e);
}

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double detleft = (a.u - c.u) * (b.v - c.v);
  const double detright = (a.v - c.v) * (b.u - c.u);
  const double det = detleft - detright;
  // Shewchuk's static bound for the double-precision evaluation above.
  constexpr double eps = std::numeric_limits<double>::epsilon() * 0.5;
  constexpr double bound_factor = (3.0 + 16.0 * eps) * eps;
  const double bound = bound_factor * (std::abs(detleft) + std::abs(detright));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient2d_exact(a, b, c);
}

namespace {

bool on_segment_collinear(Point2 p, Point2 a, Point2 b) {
  return std::min(a.u, b.u) <= p.u && p.u <= std::max(a.u, b.u) && std::min(a.v, b.v) <= p.v &&
         p.v <= std::max(a.v, b.v);
}

}  // namespace

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int o1 = orient2d(p1, p2, q1);
  const int o2 = orient2d(p1, p2, q2);
  const int o3 = orient2d(q1, q2, p1);
  const int o4 = orient2d(q1, q2, p2);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment_collinear(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment_collinear(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment_collinear(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment_collinear(p2, q1, q2)) return true;
  return false;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = squared_norm(ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double signed_area(std::span<const Point2> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * twice;
}

bool point_in_polygon(Point2 p, std::span<const Point2> polygon, double on_edge_tolerance) {
  const std::size_t n = polygon.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, polygon[i], polygon[(i + 1) % n]) <= on_edge_tolerance) return true;
  }
  // Crossing count of a ray towards +u; half-open rule on v avoids double
  // counting at vertices.
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if ((a.v > p.v) == (b.v > p.v)) continue;
    // Edge a->b straddles the ray's line; p is left of the crossing iff the
    // orientation agrees with the edge's upward/downward sense.
    const int o = orient2d(a, b, p);
    if ((b.v > a.v) ? o > 0 : o < 0) inside = !inside;
  }
  return inside;
}

}  // namespace egsr
