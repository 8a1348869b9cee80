#include <doctest.h>

#include <random>

#include "egsr/edges.hpp"
#include "egsr/eval.hpp"
#include "egsr/predicates.hpp"
#include "egsr/sampling.hpp"
#include "egsr/synth.hpp"
#include "oracles.hpp"

using namespace egsr;

namespace {

CameraRig vga_rig() { return CameraRig({525, 525, 319.5, 239.5}, {}, {}, 640, 480); }

SceneSpec square_at(double z, double extent) {
  SceneSpec s;
  s.pose = Extrinsics::translation(0, 0, z);
  s.extent = extent;
  return s;
}

}  // namespace

TEST_CASE("eval metric examples") {
  std::mt19937_64 rng(61);
  const PointCloud3 a(oracle::random_points3(rng, 50));
  const auto same = eval_metrics(a, a);
  CHECK(same.cd == 0.0);
  CHECK(same.hd == 0.0);
  CHECK(same.pred_count == 50);

  const double d = 0.375;
  for (bool normalize : {false, true}) {
    const auto r = eval_metrics(PointCloud3({{1 + d, 2, 3}}), PointCloud3({{1, 2, 3}}), normalize);
    CHECK(r.cd == doctest::Approx(d * d).epsilon(1e-15));
    CHECK(r.hd == doctest::Approx(d).epsilon(1e-15));
    CHECK(r.normalized == normalize);
  }
}

TEST_CASE("eval metrics match brute force") {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<std::size_t> size(1, 256);
  for (int t = 0; t < 40; ++t) {
    const auto a = oracle::random_points3(rng, size(rng), -3.0, 8.0);
    const auto b = oracle::random_points3(rng, size(rng), -2.0, 6.0);
    const auto raw = eval_metrics(PointCloud3(a), PointCloud3(b), false);
    CHECK(oracle::relative_error(raw.cd, oracle::chamfer(a, b) / double(a.size() + b.size())) < 1e-12);
    CHECK(oracle::relative_error(raw.hd, oracle::hausdorff(a, b)) < 1e-12);

    // Normalized: both clouds through the ground truth's unit transform.
    const auto n = normalize_to_unit(PointCloud3(b));
    std::vector<Point3> na, nb;
    auto unit = [&](Point3 p) {
      return Point3{(p.x - n.offset.x) / n.scale, (p.y - n.offset.y) / n.scale, (p.z - n.offset.z) / n.scale};
    };
    for (const auto& p : a) na.push_back(unit(p));
    for (const auto& p : b) nb.push_back(unit(p));
    const auto norm = eval_metrics(PointCloud3(a), PointCloud3(b), true);
    CHECK(norm.scale == n.scale);
    CHECK(oracle::relative_error(norm.cd, oracle::chamfer(na, nb) / double(a.size() + b.size())) < 1e-12);
    CHECK(oracle::relative_error(norm.hd, oracle::hausdorff(na, nb)) < 1e-12);
  }
}

TEST_CASE("square plane sampling") {
  const auto scene = synth_scene(square_at(2.0, 1.0), vga_rig());
  CHECK(scene.gt_cloud.size() == 10000);
  for (const auto& p : scene.gt_cloud) {
    CHECK(p.z == 2.0);
    CHECK(std::abs(p.x) < 0.5);
    CHECK(std::abs(p.y) < 0.5);
  }
  CHECK(scene.rgb.width() == 640);
  CHECK(scene.rgb.height() == 480);
}

TEST_CASE("square silhouette edges follow the projected outline") {
  const auto rig = vga_rig();
  const auto scene = synth_scene(square_at(2.0, 1.0), rig);
  std::vector<Point2> outline;
  for (auto [x, y] : {std::pair{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}) {
    outline.push_back(project({x, y, 2.0}, rig));
  }
  const auto edges = canny(scene.rgb);
  REQUIRE(edges.size() > 400);
  int sides[4] = {0, 0, 0, 0};
  for (const auto& e : edges) {
    double best = std::numeric_limits<double>::infinity();
    int side = 0;
    for (int i = 0; i < 4; ++i) {
      const double d = point_segment_distance(e, outline[i], outline[(i + 1) % 4]);
      if (d < best) best = d, side = i;
    }
    CHECK(best <= 1.5);
    ++sides[side];
  }
  for (int s : sides) CHECK(s > 100);
}

TEST_CASE("sphere and box scenes") {
  const auto rig = vga_rig();
  SceneSpec sphere;
  sphere.shape = SceneShape::Sphere;
  sphere.pose = Extrinsics::translation(0.1, -0.05, 3.0);
  sphere.extent = 0.6;
  const auto s = synth_scene(sphere, rig);
  CHECK(s.gt_cloud.size() > 100);
  for (const auto& p : s.gt_cloud) {
    CHECK(std::abs(norm(p - Point3{0.1, -0.05, 3.0}) - 0.3) < 1e-9);
    CHECK(p.z <= 3.0 + 1e-12);
  }
  CHECK_FALSE(canny(s.rgb).empty());

  SceneSpec box;
  box.shape = SceneShape::Box;
  std::mt19937_64 rng(63);
  box.pose = Extrinsics::from_rotation_translation(oracle::random_rotation(rng, 0.5), Eigen::Vector3d(0, 0, 3));
  box.extent = 0.4;
  box.density = 2500;
  const auto b = synth_scene(box, rig);
  CHECK(b.gt_cloud.size() >= 400);
  const Eigen::Matrix3d rt = box.pose.rotation().transpose();
  for (const auto& p : b.gt_cloud) {
    const Eigen::Vector3d local = rt * (Eigen::Vector3d(p.x, p.y, p.z) - Eigen::Vector3d(0, 0, 3));
    CHECK(local.cwiseAbs().maxCoeff() == doctest::Approx(0.2).epsilon(1e-12));
  }
}

TEST_CASE("scene errors") {
  const auto rig = vga_rig();
  try {
    synth_scene(square_at(0.5, 2.0), rig);
    FAIL("expected ShapeOutOfFrame");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeOutOfFrame);
  }
  CHECK_THROWS_AS(synth_scene(square_at(-2.0, 0.5), rig), Error);
  SceneSpec bad = square_at(2.0, 0.5);
  bad.background = bad.foreground;
  CHECK_THROWS_AS(synth_scene(bad, rig), Error);
}
