#include <doctest.h>

#include <random>
#include <set>

#include "egsr/hull.hpp"
#include "egsr/predicates.hpp"
#include "oracles.hpp"

using namespace egsr;

namespace {

std::set<std::pair<double, double>> as_set(const std::vector<Point2>& v) {
  std::set<std::pair<double, double>> s;
  for (const auto& p : v) s.insert({p.u, p.v});
  return s;
}

std::vector<Point2> convex_position(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::set<double> angles;
  while (angles.size() < n) angles.insert(ang(rng));
  std::vector<Point2> pts;
  for (double a : angles) pts.push_back({200.0 + 150.0 * std::cos(a), 200.0 + 120.0 * std::sin(a)});
  std::shuffle(pts.begin(), pts.end(), rng);
  return pts;
}

void check_hull(const std::vector<Point2>& pts, const HullPolygon& h) {
  REQUIRE(h.vertices.size() >= 3);
  CHECK(h.vertices.size() == h.source_indices.size());
  CHECK(polygon_is_simple(h));
  CHECK(contains_all(h, PointSet2(pts, PointSetRole::Projection)));
  CHECK(signed_area(h.vertices) > 0.0);
  std::set<std::size_t> distinct(h.source_indices.begin(), h.source_indices.end());
  CHECK(distinct.size() == h.source_indices.size());
  for (std::size_t i = 0; i < h.vertices.size(); ++i) CHECK(pts[h.source_indices[i]] == h.vertices[i]);
}

}  // namespace

TEST_CASE("orientation predicate") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient2d({0, 0}, {1, 0}, {0, -1}) == -1);
  CHECK(orient2d({0, 0}, {1, 1}, {3, 3}) == 0);
  // Rounding makes the naive determinant nonzero here; the exact answer is 0.
  const Point2 a{0.1, 0.1}, b{0.3, 0.3};
  CHECK(orient2d(a, b, {0.7, 0.7}) == orient2d(b, a, {0.7, 0.7}) * -1);
  CHECK(orient2d({0.5, 0.5}, {12, 12}, {24, 24}) == 0);
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5}));
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 1}, {0, 1}, {0.4, 0.6}));
}

TEST_CASE("simple polygon and containment") {
  const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Point2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK(polygon_is_simple(square));
  CHECK_FALSE(polygon_is_simple(bowtie));
  CHECK(contains_all(square, square));
  CHECK(contains_all(square, std::vector<Point2>{{0.5, 0.5}, {0.5, 0.0}, {1.0, 0.3}}));
  CHECK_FALSE(contains_all(square, std::vector<Point2>{{2.0 * std::sqrt(2.0) + 1, 0.5}}));
  CHECK(point_in_polygon({1.0 + 5e-10, 0.5}, square, kOnEdgeTolerance));
  CHECK_FALSE(point_in_polygon({1.0 + 1e-6, 0.5}, square, kOnEdgeTolerance));
  const std::vector<Point2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK(point_in_polygon({0.5, 1.5}, ell, 0.0));
  CHECK_FALSE(point_in_polygon({1.5, 1.5}, ell, 0.0));
}

TEST_CASE("small hulls") {
  const std::vector<Point2> tri{{0, 0}, {4, 1}, {1, 3}};
  const auto h = concave_hull(PointSet2(tri, PointSetRole::Projection), 3);
  CHECK(as_set(h.vertices) == as_set(tri));
  CHECK(h.vertices[0] == Point2{0, 0});
  check_hull(tri, h);

  const std::vector<Point2> sq{{1, 1}, {0, 0}, {0, 1}, {1, 0}};
  const auto hs = concave_hull(PointSet2(sq, PointSetRole::Projection), 3);
  CHECK(hs.vertices == oracle::convex_hull(sq));
  check_hull(sq, hs);

  const std::vector<std::size_t> idx{40, 41, 42, 43};
  CHECK(concave_hull(PointSet2(sq, PointSetRole::Projection), idx, 3).source_indices[0] == 41);
}

TEST_CASE("hull errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  const std::vector<Point2> two{{0, 0}, {1, 1}, {0, 0}};
  CHECK(code([&] { concave_hull(PointSet2(two, PointSetRole::Projection), 3); }) == ErrorCode::TooFewPoints);
  const std::vector<Point2> line{{0, 0}, {1, 1}, {2, 2}, {5, 5}};
  CHECK(code([&] { concave_hull(PointSet2(line, PointSetRole::Projection), 3); }) == ErrorCode::DegenerateCollinear);
  const std::vector<Point2> tri{{0, 0}, {4, 1}, {1, 3}};
  CHECK(code([&] { concave_hull(PointSet2(tri, PointSetRole::Projection), 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("duplicates are merged before the walk") {
  std::vector<Point2> pts{{0, 0}, {3, 0}, {3, 3}, {0, 3}, {1, 1}, {3, 3}, {0, 0}, {1.5, 2}};
  const auto h = concave_hull(PointSet2(pts, PointSetRole::Projection), 3);
  check_hull(pts, h);
}

TEST_CASE("convex position with k = n - 1 gives the convex hull") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {5u, 17u, 64u, 200u}) {
    const auto pts = convex_position(rng, n);
    const auto h = concave_hull(PointSet2(pts, PointSetRole::Projection), n - 1);
    CHECK(as_set(h.vertices) == as_set(oracle::convex_hull(pts)));
    check_hull(pts, h);
  }
}

TEST_CASE("random hulls are valid") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<std::size_t> size(10, 300);
  for (int t = 0; t < 60; ++t) {
    const auto pts = oracle::random_points2(rng, size(rng));
    const auto h = concave_hull(PointSet2(pts, PointSetRole::Projection), 3 + t % 20);
    check_hull(pts, h);
  }
  // Integer grids stress collinear candidates and exact ties.
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> c(0, 12);
    std::vector<Point2> pts;
    for (int i = 0; i < 80; ++i) pts.push_back({double(c(rng)), double(c(rng))});
    const auto h = concave_hull(PointSet2(pts, PointSetRole::Projection), 3 + t % 5);
    check_hull(pts, h);
  }
}

TEST_CASE("area in k is logged rather than asserted") {
  std::mt19937_64 rng(23);
  int violations = 0;
  for (int t = 0; t < 100; ++t) {
    const auto pts = oracle::random_points2(rng, 60);
    const PointSet2 set(pts, PointSetRole::Projection);
    double prev = 0.0;
    for (std::size_t k : {3u, 6u, 12u, 24u}) {
      const double a = signed_area(concave_hull(set, k).vertices);
      if (a < prev - 1e-9) ++violations;
      prev = a;
    }
  }
  MESSAGE("area decreased with larger k in " << violations << " of 300 steps");
}
