#include <doctest.h>

#include <random>

#include "egsr/camera.hpp"
#include "oracles.hpp"

using namespace egsr;

namespace {

CameraRig simple_rig(Extrinsics e_rgb = {}, Extrinsics e_tof = {}) {
  return CameraRig({100, 100, 50, 50}, e_rgb, e_tof, 100, 100);
}

Extrinsics random_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(-0.5, 0.5);
  return Extrinsics::from_rotation_translation(oracle::random_rotation(rng, 0.3), {t(rng), t(rng), t(rng)});
}

}  // namespace

TEST_CASE("tof_to_rgb_frame") {
  CHECK(tof_to_rgb_frame({1, 2, 3}, simple_rig()) == Point3{1, 2, 3});

  const auto shifted = tof_to_rgb_frame({0, 0, 5}, simple_rig({}, Extrinsics::translation(1, 0, 0)));
  CHECK(shifted.x == doctest::Approx(1.0));
  CHECK(shifted.y == doctest::Approx(0.0));
  CHECK(shifted.z == doctest::Approx(5.0));

  std::mt19937_64 rng(1);
  const Extrinsics shared = random_pose(rng);
  const auto rig = simple_rig(shared, shared);
  for (const auto& p : oracle::random_points3(rng, 50, -3, 3)) {
    const auto q = tof_to_rgb_frame(p, rig);
    CHECK(std::abs(q.x - p.x) < 1e-12);
    CHECK(std::abs(q.y - p.y) < 1e-12);
    CHECK(std::abs(q.z - p.z) < 1e-12);
  }
}

TEST_CASE("rigid transform preserves distances") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto rig = simple_rig(random_pose(rng), random_pose(rng));
    const auto pts = oracle::random_points3(rng, 2, -5, 5);
    const double before = norm(pts[0] - pts[1]);
    const double after = norm(tof_to_rgb_frame(pts[0], rig) - tof_to_rgb_frame(pts[1], rig));
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("project on the identity rig") {
  const auto rig = simple_rig();
  const Point2 c = project({0, 0, 4}, rig);
  CHECK(c.u == 50.0);
  CHECK(c.v == 50.0);
  const Point2 p = project({1, 2, 10}, rig);
  CHECK(p.u == doctest::Approx(60.0));
  CHECK(p.v == doctest::Approx(70.0));
  try {
    project({0, 0, -1}, rig);
    FAIL("expected BehindCamera");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BehindCamera);
  }
  CHECK_FALSE(try_project({0, 0, CameraRig::kNearPlane}, rig).has_value());
  CHECK(try_project({0, 0, 2 * CameraRig::kNearPlane}, rig).has_value());
}

TEST_CASE("project is scale invariant with identity extrinsics") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lambda(0.1, 10.0);
  const auto rig = simple_rig();
  for (auto p : oracle::random_points3(rng, 100, 0.5, 3)) {
    const double l = lambda(rng);
    const Point2 a = project(p, rig);
    const Point2 b = project(l * p, rig);
    CHECK(std::abs(a.u - b.u) < 1e-9);
    CHECK(std::abs(a.v - b.v) < 1e-9);
  }
}

TEST_CASE("project_cloud culling and index map") {
  const auto rig = simple_rig();
  std::vector<Point3> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({0.01 * i, 0.0, 2.0});
  SUBCASE("all in frame") {
    const auto pr = project_cloud(PointCloud3(pts), rig);
    CHECK(pr.points.size() == 10);
    CHECK(pr.culled == 0);
    for (std::size_t i = 0; i < 10; ++i) CHECK(pr.index_map[i] == i);
  }
  SUBCASE("one behind") {
    pts[4].z = -1.0;
    const auto pr = project_cloud(PointCloud3(pts), rig);
    CHECK(pr.points.size() == 9);
    CHECK(pr.culled == 1);
    CHECK(std::find(pr.index_map.begin(), pr.index_map.end(), 4u) == pr.index_map.end());
  }
  SUBCASE("out of frame") {
    pts[2].x = 10.0;
    const auto pr = project_cloud(PointCloud3(pts), rig);
    CHECK(pr.points.size() == 9);
  }
  SUBCASE("everything culled") {
    try {
      project_cloud(PointCloud3({{0, 0, -1}, {100, 0, 1}}), rig);
      FAIL("expected AllPointsCulled");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AllPointsCulled);
    }
  }
  SUBCASE("per-point agreement") {
    std::mt19937_64 rng(4);
    const auto cloud = PointCloud3(oracle::random_points3(rng, 300, -1, 3));
    const auto pr = project_cloud(cloud, rig);
    for (std::size_t i = 0; i < pr.points.size(); ++i) {
      const auto want = project(cloud[pr.index_map[i]], rig);
      CHECK(pr.points[i] == want);
      CHECK(rig.in_frame(want));
    }
  }
}

TEST_CASE("projection jacobian") {
  const auto j = projection_jacobian({0, 0, 10}, simple_rig());
  CHECK(j(0, 0) == doctest::Approx(10));
  CHECK(j(1, 1) == doctest::Approx(10));
  CHECK(j(0, 1) == 0.0);
  CHECK(j(1, 0) == 0.0);
  CHECK(j(0, 2) == 0.0);
  CHECK(j(1, 2) == 0.0);
  CHECK_THROWS_AS(projection_jacobian({0, 0, -2}, simple_rig()), Error);

  std::mt19937_64 rng(5);
  SUBCASE("pure rotation is chain rule") {
    const Eigen::Matrix3d r = oracle::random_rotation(rng, 0.2);
    const auto rig = simple_rig({}, Extrinsics::from_rotation_translation(r, Eigen::Vector3d::Zero()));
    const Point3 p{0.1, -0.2, 3.0};
    const Eigen::Vector3d rp = r * Eigen::Vector3d(p.x, p.y, p.z);
    const Eigen::Matrix<double, 2, 3> want =
        projection_jacobian({rp.x(), rp.y(), rp.z()}, simple_rig()) * r;
    CHECK((projection_jacobian(p, rig) - want).norm() < 1e-12);
  }
  SUBCASE("matches finite differences") {
    const double h = 1e-6;
    for (int t = 0; t < 200; ++t) {
      const auto rig = simple_rig(random_pose(rng), random_pose(rng));
      Point3 p = oracle::random_points3(rng, 1, -1, 1)[0];
      p.z += 3.0;
      if (tof_to_rgb_frame(p, rig).z <= 0.1) continue;
      const auto j = projection_jacobian(p, rig);
      for (int c = 0; c < 3; ++c) {
        Point3 dp{0, 0, 0};
        (c == 0 ? dp.x : c == 1 ? dp.y : dp.z) = h;
        const Point2 a = project(p + dp, rig);
        const Point2 b = project(p - dp, rig);
        const double du = (a.u - b.u) / (2 * h);
        const double dv = (a.v - b.v) / (2 * h);
        const double scale = std::max(1.0, j.col(c).norm());
        CHECK(std::abs(du - j(0, c)) / scale < 1e-5);
        CHECK(std::abs(dv - j(1, c)) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("projection agrees with homogeneous evaluation") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const Intrinsics k{400.0 + t, 420.0 + t, 320, 240};
    const auto rig = CameraRig(k, random_pose(rng), random_pose(rng), 640, 480);
    Point3 p = oracle::random_points3(rng, 1, -1, 1)[0];
    p.z += 4.0;
    const auto want = oracle::homogeneous_projection(k.matrix(), rig.e_rgb().matrix(), rig.e_tof().matrix(), p);
    const auto got = project(p, rig);
    CHECK(oracle::relative_error(got.u, want[0]) < 1e-12);
    CHECK(oracle::relative_error(got.v, want[1]) < 1e-12);
  }
}

TEST_CASE("extrinsics validation") {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = 1.1;
  CHECK_THROWS_AS(Extrinsics{m}, Error);
  m = Eigen::Matrix4d::Identity();
  m(0, 0) = -1.0;
  CHECK_THROWS_AS(Extrinsics{m}, Error);
  m = Eigen::Matrix4d::Identity();
  m(3, 0) = 0.5;
  CHECK_THROWS_AS(Extrinsics{m}, Error);
  m = Eigen::Matrix4d::Identity();
  m(0, 1) = 1e-7;
  CHECK_THROWS_AS(Extrinsics{m}, Error);
  const auto snapped = Extrinsics::orthonormalized(m, 1e-6);
  const Eigen::Matrix3d r = snapped.rotation();
  CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-12);
  m(0, 1) = 1e-3;
  CHECK_THROWS_AS(Extrinsics::orthonormalized(m, 1e-6), Error);

  std::mt19937_64 rng(7);
  const auto e = random_pose(rng);
  CHECK(((e * e.inverse()).matrix() - Eigen::Matrix4d::Identity()).norm() < 1e-12);
  CHECK((e.inverse().matrix() - e.matrix().inverse()).norm() < 1e-12);
}

TEST_CASE("rig validation") {
  CHECK_THROWS_AS(CameraRig({100, 100, 0, 0}, {}, {}, 0, 10), Error);
  CHECK_THROWS_AS(CameraRig({-1, 100, 0, 0}, {}, {}, 10, 10), Error);
  CHECK_THROWS_AS(CameraRig({100, 0, 0, 0}, {}, {}, 10, 10), Error);
}
