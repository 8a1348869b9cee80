#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "egsr/camera.hpp"
#include "egsr/eval.hpp"
#include "egsr/geometry.hpp"
#include "egsr/hull.hpp"
#include "egsr/refine.hpp"
#include "egsr/synth.hpp"

namespace egsr {

/// Calibration rotations may deviate from orthonormal by this much; accepted
/// rotations are snapped to the nearest orthonormal matrix.
inline constexpr double kCalibrationTolerance = 1e-6;

/// 2D point CSV: header "u,v", one point per line. Extra columns are ignored
/// on read.
PointSet2 read_points_csv(std::istream& in, PointSetRole role = PointSetRole::Projection);
PointSet2 read_points_csv(const std::filesystem::path& path, PointSetRole role = PointSetRole::Projection);
void write_points_csv(std::ostream& out, std::span<const Point2> points);

/// Polygon CSV: header "u,v,source_index", vertices in hull order.
void write_hull_csv(std::ostream& out, const HullPolygon& hull);

/// {"k_rgb": {"fx","fy","cx","cy"}, "e_rgb": [16], "e_tof": [16],
///  "width": int, "height": int}; matrices row-major.
CameraRig parse_calibration(const std::string& text);
CameraRig read_calibration(const std::filesystem::path& path);
std::string calibration_to_json(const CameraRig& rig);

/// {"shape": "square-plane"|"box"|"sphere", "pose": [16], "extent",
///  "density", "foreground", "background"}.
SceneSpec parse_scene(const std::string& text);
SceneSpec read_scene(const std::filesystem::path& path);

/// {"cd", "hd", "normalized", "pred_count", "gt_count"}.
std::string eval_report_json(const EvalReport& report);

/// One JSON object per line: an "iteration" event per record followed by a
/// single "summary" event.
void write_trace_jsonl(std::ostream& out, const RefineTrace& trace);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace egsr
