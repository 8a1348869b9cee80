#include "egsr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include "egsr/camera.hpp"
#include "egsr/densify.hpp"
#include "egsr/edges.hpp"
#include "egsr/eval.hpp"
#include "egsr/formats.hpp"
#include "egsr/hull.hpp"
#include "egsr/pixmap.hpp"
#include "egsr/ply.hpp"
#include "egsr/refine.hpp"
#include "egsr/synth.hpp"

namespace egsr {

namespace {

struct PlyOutputFlags {
  bool ascii = false;
  bool float32 = false;

  void add(CLI::App* cmd) {
    cmd->add_flag("--ascii", ascii, "Write ASCII PLY instead of binary little-endian");
    cmd->add_flag("--float32", float32, "Store coordinates as float32 instead of float64");
  }
  void write(const std::string& path, const PointCloud3& cloud) const {
    write_ply(path, cloud, ascii ? PlyFormat::Ascii : PlyFormat::BinaryLittleEndian,
              float32 ? PlyPrecision::Float32 : PlyPrecision::Float64);
  }
};

void add_canny_flags(CLI::App* cmd, CannyParams& p) {
  cmd->add_option("--sigma", p.sigma, "Gaussian smoothing sigma in pixels")->capture_default_str();
  cmd->add_option("--low", p.low, "Low hysteresis threshold (fraction of max gradient)")->capture_default_str();
  cmd->add_option("--high", p.high, "High hysteresis threshold (fraction of max gradient)")->capture_default_str();
}

void add_densify_flags(CLI::App* cmd, DensifyConfig& d) {
  cmd->add_option("--rate", d.rate, "Upsampling factor r")->capture_default_str();
  cmd->add_option("--k-interp", d.k_interp, "Neighbours per point for midpoint insertion")->capture_default_str();
  cmd->add_option("--dedupe-eps", d.dedupe_eps, "Midpoint deduplication radius (m)")->capture_default_str();
}

void add_refine_flags(CLI::App* cmd, RefineConfig& r) {
  cmd->add_option("--max-iters", r.max_iters, "Maximum refinement iterations")->capture_default_str();
  cmd->add_option("--refresh", r.hull_refresh_period, "Iterations between hull recomputations")
      ->capture_default_str();
  cmd->add_option("--step", r.initial_step, "Initial line-search step (fraction of cloud half-extent)")
      ->capture_default_str();
  cmd->add_option("--backtrack", r.backtrack_factor, "Line-search shrink factor")->capture_default_str();
  cmd->add_option("--min-step", r.min_step, "Smallest line-search step")->capture_default_str();
  cmd->add_option("--alpha", r.weights.alpha, "Chamfer loss weight")->capture_default_str();
  cmd->add_option("--beta", r.weights.beta, "Hausdorff loss weight")->capture_default_str();
  cmd->add_option("--gamma", r.weights.gamma, "Gradient-smooth loss weight")->capture_default_str();
  cmd->add_option("-k,--hull-k", r.hull_k, "Concave hull neighbour count")->capture_default_str();
  cmd->add_flag("--constant-depth", r.constant_depth, "Keep refined points at constant RGB-frame depth");
}

/// Writes to the file when a path is given, otherwise to `fallback`.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  body(f);
  if (!f) throw Error(ErrorCode::Io, "failed writing " + path);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-guided point cloud super-resolution toolkit", "egsr"};
  app.require_subcommand(1);
  std::function<void()> action;

  // edges
  std::string edges_image;
  std::string edges_out;
  CannyParams edges_params;
  auto* edges = app.add_subcommand("edges", "Canny edge points of a PGM/PPM image as CSV");
  edges->add_option("image", edges_image, "Input pixmap (P2/P3/P5/P6)")->required();
  edges->add_option("-o,--output", edges_out, "Output CSV (default: stdout)");
  add_canny_flags(edges, edges_params);
  edges->callback([&] {
    action = [&] {
      const PointSet2 e = canny(read_pixmap(edges_image), edges_params);
      emit(edges_out, out, [&](std::ostream& os) { write_points_csv(os, e.points()); });
    };
  });

  // project
  std::string project_cloud_path;
  std::string project_calib;
  std::string project_out;
  auto* project_cmd = app.add_subcommand("project", "Project a PLY cloud into the RGB image as CSV");
  project_cmd->add_option("cloud", project_cloud_path, "Input PLY")->required();
  project_cmd->add_option("--calib", project_calib, "Calibration JSON")->required();
  project_cmd->add_option("-o,--output", project_out, "Output CSV (default: stdout)");
  project_cmd->callback([&] {
    action = [&] {
      const CameraRig rig = read_calibration(project_calib);
      const Projection proj = project_cloud(read_ply(project_cloud_path), rig);
      emit(project_out, out, [&](std::ostream& os) { write_points_csv(os, proj.points.points()); });
      err << "projected " << proj.points.size() << " points, culled " << proj.culled << "\n";
    };
  });

  // hull
  std::string hull_in;
  std::string hull_out;
  std::size_t hull_k = kDefaultHullK;
  auto* hull_cmd = app.add_subcommand("hull", "Concave hull of a 2D point CSV");
  hull_cmd->add_option("points", hull_in, "Input CSV with header u,v")->required();
  hull_cmd->add_option("-k", hull_k, "Neighbour count")->capture_default_str();
  hull_cmd->add_option("-o,--output", hull_out, "Output polygon CSV (default: stdout)");
  hull_cmd->callback([&] {
    action = [&] {
      const HullPolygon hull = concave_hull(read_points_csv(hull_in), hull_k);
      emit(hull_out, out, [&](std::ostream& os) { write_hull_csv(os, hull); });
    };
  });

  // densify
  std::string densify_in;
  std::string densify_out;
  DensifyConfig densify_cfg;
  PlyOutputFlags densify_ply;
  auto* densify_cmd = app.add_subcommand("densify", "Upsample a PLY cloud by midpoint insertion");
  densify_cmd->add_option("cloud", densify_in, "Input PLY")->required();
  densify_cmd->add_option("-o,--output", densify_out, "Output PLY")->required();
  add_densify_flags(densify_cmd, densify_cfg);
  densify_ply.add(densify_cmd);
  densify_cmd->callback([&] {
    action = [&] { densify_ply.write(densify_out, densify(read_ply(densify_in), densify_cfg)); };
  });

  // superres
  std::string sr_cloud;
  std::string sr_image;
  std::string sr_calib;
  std::string sr_out;
  std::string sr_trace;
  DensifyConfig sr_dcfg;
  RefineConfig sr_rcfg;
  CannyParams sr_ccfg;
  PlyOutputFlags sr_ply;
  auto* sr = app.add_subcommand("superres", "Densify a sparse cloud and refine it against image edges");
  sr->add_option("cloud", sr_cloud, "Sparse input PLY")->required();
  sr->add_option("image", sr_image, "Guidance pixmap")->required();
  sr->add_option("--calib", sr_calib, "Calibration JSON")->required();
  sr->add_option("-o,--output", sr_out, "Output PLY")->required();
  sr->add_option("--trace", sr_trace, "Write the refinement trace as JSON lines");
  add_densify_flags(sr, sr_dcfg);
  add_refine_flags(sr, sr_rcfg);
  add_canny_flags(sr, sr_ccfg);
  sr_ply.add(sr);
  sr->callback([&] {
    action = [&] {
      const CameraRig rig = read_calibration(sr_calib);
      const GrayImage img = read_pixmap(sr_image);
      if (img.width() != rig.width() || img.height() != rig.height()) {
        throw Error(ErrorCode::InvalidArgument,
                    "image " + sr_image + " is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " but calibration expects " + std::to_string(rig.width()) + "x" +
                        std::to_string(rig.height()));
      }
      const RefineResult res = superres(read_ply(sr_cloud), img, rig, sr_dcfg, sr_rcfg, sr_ccfg);
      sr_ply.write(sr_out, res.cloud);
      if (!sr_trace.empty()) emit(sr_trace, out, [&](std::ostream& os) { write_trace_jsonl(os, res.trace); });
      err << "initial loss " << res.trace.initial_loss << ", final loss " << res.trace.final_loss << " ("
          << res.trace.accepted_steps << " accepted steps, " << res.trace.stop_reason << ")\n";
    };
  });

  // eval
  std::string eval_pred;
  std::string eval_gt;
  bool eval_raw = false;
  auto* eval_cmd = app.add_subcommand("eval", "Chamfer and Hausdorff distances between two PLY clouds");
  eval_cmd->add_option("pred", eval_pred, "Predicted PLY")->required();
  eval_cmd->add_option("gt", eval_gt, "Ground-truth PLY")->required();
  eval_cmd->add_flag("--no-normalize", eval_raw, "Skip normalization by the ground truth's unit transform");
  eval_cmd->callback([&] {
    action = [&] { out << eval_report_json(eval_metrics(read_ply(eval_pred), read_ply(eval_gt), !eval_raw)) << "\n"; };
  });

  // synth
  std::string synth_scene_path;
  std::string synth_calib;
  std::string synth_cloud;
  std::string synth_image;
  PlyOutputFlags synth_ply;
  auto* synth = app.add_subcommand("synth", "Render a synthetic scene to a PLY cloud and a graymap");
  synth->add_option("scene", synth_scene_path, "Scene JSON")->required();
  synth->add_option("--calib", synth_calib, "Calibration JSON")->required();
  synth->add_option("--cloud", synth_cloud, "Output ground-truth PLY")->required();
  synth->add_option("--image", synth_image, "Output P5 graymap")->required();
  synth_ply.add(synth);
  synth->callback([&] {
    action = [&] {
      const SyntheticScene scene = synth_scene(read_scene(synth_scene_path), read_calibration(synth_calib));
      synth_ply.write(synth_cloud, scene.gt_cloud);
      write_graymap(synth_image, scene.rgb);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace egsr
