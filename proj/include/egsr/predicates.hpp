#pragma once

#include <span>

#include "egsr/geometry.hpp"

namespace egsr {

/// Sign of the orientation determinant of (a, b, c): +1 when c lies to the
/// left of a->b, -1 to the right, 0 when collinear. Exact for all finite
/// double inputs (floating filter with an error-free expansion fallback).
int orient2d(Point2 a, Point2 b, Point2 c);

/// Closed-segment intersection: touching endpoints and collinear overlap count.
bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Signed shoelace area; positive for counter-clockwise order in (u, v).
double signed_area(std::span<const Point2> polygon);

/// Inside-or-on test for a simple polygon; points within `on_edge_tolerance`
/// of an edge count as on it.
bool point_in_polygon(Point2 p, std::span<const Point2> polygon, double on_edge_tolerance);

}  // namespace egsr
