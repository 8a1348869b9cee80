#include "egsr/refine.hpp"

#include <Eigen/Core>

#include "egsr/hull.hpp"
#include "egsr/sampling.hpp"

namespace egsr {

void RefineConfig::validate() const {
  if (hull_refresh_period == 0) throw Error(ErrorCode::InvalidArgument, "hull refresh period must be positive");
  if (!(initial_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "initial step must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "backtrack factor must lie in (0, 1)");
  }
  if (!(min_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "min step must be positive");
  if (hull_k < 3) throw Error(ErrorCode::InvalidArgument, "hull k must be at least 3");
  if (!(relative_tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "relative tolerance must be >= 0");
  weights.validate();
}

namespace {

struct Window {
  std::vector<std::size_t> members;
  std::size_t culled = 0;
};

Window hull_window(const std::vector<Point3>& pts, const CameraRig& rig, std::size_t k) {
  const Projection proj = project_cloud(PointCloud3(pts), rig);
  const HullPolygon hull = concave_hull(proj.points, proj.index_map, k);
  return {hull.source_indices, proj.culled};
}

/// Projected vertices of the members, or nothing if one falls behind the camera.
std::optional<std::vector<Point2>> project_members(const std::vector<Point3>& pts,
                                                   const std::vector<std::size_t>& members, const CameraRig& rig) {
  std::vector<Point2> out;
  out.reserve(members.size());
  for (std::size_t m : members) {
    const auto uv = try_project(pts[m], rig);
    if (!uv) return std::nullopt;
    out.push_back(*uv);
  }
  return out;
}

RefineRecord record_of(const LossReport& r) {
  RefineRecord rec;
  rec.total = r.total;
  rec.l_cd = r.l_cd;
  rec.l_hd = r.l_hd;
  rec.l_gs = r.l_gs;
  return rec;
}

}  // namespace

RefineResult refine(const PointCloud3& cloud, const PointSet2& edge_map, const CameraRig& rig,
                    const RefineConfig& cfg) {
  cfg.validate();
  if (edge_map.empty()) throw Error(ErrorCode::EmptyEdgeMap, "refinement needs at least one edge point");
  const EdgeTarget target(edge_map);
  const double step_scale = normalize_to_unit(cloud).scale;
  const Eigen::RowVector3d depth_axis = rig.tof_to_rgb().rotation().row(2);

  std::vector<Point3> pts(cloud.begin(), cloud.end());
  RefineTrace trace;
  std::size_t iter = 0;
  bool done = false;
  bool first_window = true;

  for (std::size_t window = 0; !done; ++window) {
    const Window win = hull_window(pts, rig, cfg.hull_k);
    auto verts = project_members(pts, win.members, rig);
    if (!verts) throw Error(ErrorCode::BehindCamera, "hull member behind camera");
    LossReport report = combined_loss(target, *verts, cfg.weights);
    if (first_window) {
      trace.initial_loss = report.total;
      first_window = false;
    }
    if (iter >= cfg.max_iters) {
      trace.stop_reason = "max_iters";
      break;
    }
    const double window_start = report.total;

    for (std::size_t t = 0; t < cfg.hull_refresh_period; ++t) {
      if (iter >= cfg.max_iters) {
        trace.stop_reason = "max_iters";
        done = true;
        break;
      }
      std::vector<Point3> direction(win.members.size());
      bool any = false;
      for (std::size_t j = 0; j < win.members.size(); ++j) {
        const Eigen::RowVector2d g(report.grad[j].u, report.grad[j].v);
        Eigen::RowVector3d g3 = g * projection_jacobian(pts[win.members[j]], rig);
        if (cfg.constant_depth) g3 -= g3.dot(depth_axis) * depth_axis;
        direction[j] = {g3.x(), g3.y(), g3.z()};
        any = any || g3.squaredNorm() > 0.0;
      }

      RefineRecord rec = record_of(report);
      if (any) {
        std::vector<Point3> trial = pts;
        for (double step = cfg.initial_step; step >= cfg.min_step; step *= cfg.backtrack_factor) {
          for (std::size_t j = 0; j < win.members.size(); ++j) {
            const std::size_t m = win.members[j];
            trial[m] = pts[m] - (step * step_scale) * direction[j];
          }
          const auto tv = project_members(trial, win.members, rig);
          if (!tv) continue;
          LossReport next = combined_loss(target, *tv, cfg.weights);
          if (next.total < report.total) {
            pts.swap(trial);
            report = std::move(next);
            rec = record_of(report);
            rec.step = step;
            rec.accepted = true;
            ++trace.accepted_steps;
            break;
          }
        }
      }
      rec.iteration = iter;
      rec.window = window;
      rec.hull_size = win.members.size();
      rec.culled = win.culled;
      trace.records.push_back(rec);
      ++iter;

      if (!rec.accepted) {
        // A stale hull may be the obstacle; a fresh one that still cannot
        // move is a stationary point.
        if (t == 0) {
          trace.stop_reason = "step_underflow";
          done = true;
        }
        break;
      }
    }
    if (!done && window_start - report.total < cfg.relative_tolerance * window_start) {
      trace.stop_reason = "converged";
      done = true;
    }
  }

  PointCloud3 out(std::move(pts));
  {
    const Window win = hull_window(std::vector<Point3>(out.begin(), out.end()), rig, cfg.hull_k);
    auto verts = project_members(std::vector<Point3>(out.begin(), out.end()), win.members, rig);
    if (!verts) throw Error(ErrorCode::BehindCamera, "hull member behind camera");
    trace.final_loss = combined_loss(target, *verts, cfg.weights).total;
  }
  return {std::move(out), std::move(trace)};
}

RefineResult superres(const PointCloud3& sparse, const GrayImage& rgb, const CameraRig& rig,
                      const DensifyConfig& dcfg, const RefineConfig& rcfg, const CannyParams& ccfg) {
  if (rgb.width() != rig.width() || rgb.height() != rig.height()) {
    throw Error(ErrorCode::InvalidArgument,
                "image is " + std::to_string(rgb.width()) + "x" + std::to_string(rgb.height()) +
                    " but calibration expects " + std::to_string(rig.width()) + "x" + std::to_string(rig.height()));
  }
  const PointSet2 edges = canny(rgb, ccfg);
  if (edges.empty()) throw Error(ErrorCode::EmptyEdgeMap, "no edges detected in the guidance image");
  return refine(densify(sparse, dcfg), edges, rig, rcfg);
}

}  // namespace egsr
