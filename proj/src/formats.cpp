#include "egsr/formats.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace egsr {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointSet2 read_points_csv(std::istream& in, PointSetRole role) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("u,v", 0) != 0) throw Error(ErrorCode::MalformedHeader, "CSV header must start with 'u,v'");
  std::vector<Point2> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a;
    std::string b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) {
      throw Error(ErrorCode::TruncatedData, "line " + std::to_string(lineno) + " has fewer than two fields");
    }
    try {
      std::size_t ua = 0;
      std::size_t ub = 0;
      const double u = std::stod(a, &ua);
      const double v = std::stod(b, &ub);
      pts.push_back({u, v});
    } catch (const std::exception&) {
      throw Error(ErrorCode::TruncatedData, "line " + std::to_string(lineno) + " is not numeric");
    }
  }
  return PointSet2(std::move(pts), role);
}

PointSet2 read_points_csv(const std::filesystem::path& path, PointSetRole role) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_points_csv(in, role);
}

void write_points_csv(std::ostream& out, std::span<const Point2> points) {
  out << "u,v\n" << std::setprecision(17);
  for (const auto& p : points) out << p.u << ',' << p.v << '\n';
}

void write_hull_csv(std::ostream& out, const HullPolygon& hull) {
  out << "u,v,source_index\n" << std::setprecision(17);
  for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
    out << hull.vertices[i].u << ',' << hull.vertices[i].v << ',' << hull.source_indices[i] << '\n';
  }
}

namespace {

Eigen::Matrix4d matrix_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 16) {
    throw Error(ErrorCode::InvalidCalibration, std::string(key) + " must be a 16-element array");
  }
  Eigen::Matrix4d m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = j[key][i].get<double>();
  return m;
}

json matrix_to_json(const Eigen::Matrix4d& m) {
  json arr = json::array();
  for (int i = 0; i < 16; ++i) arr.push_back(m(i / 4, i % 4));
  return arr;
}

json parse_json(const std::string& text, ErrorCode code) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(code, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

CameraRig parse_calibration(const std::string& text) {
  const json j = parse_json(text, ErrorCode::InvalidCalibration);
  try {
    const json& k = j.at("k_rgb");
    const Intrinsics intr{k.at("fx").get<double>(), k.at("fy").get<double>(), k.at("cx").get<double>(),
                          k.at("cy").get<double>()};
    return CameraRig(intr, Extrinsics::orthonormalized(matrix_from_json(j, "e_rgb"), kCalibrationTolerance),
                     Extrinsics::orthonormalized(matrix_from_json(j, "e_tof"), kCalibrationTolerance),
                     j.at("width").get<int>(), j.at("height").get<int>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidCalibration, std::string("calibration: ") + e.what());
  }
}

CameraRig read_calibration(const std::filesystem::path& path) { return parse_calibration(read_text_file(path)); }

std::string calibration_to_json(const CameraRig& rig) {
  const auto& k = rig.intrinsics();
  json j;
  j["k_rgb"] = {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}};
  j["e_rgb"] = matrix_to_json(rig.e_rgb().matrix());
  j["e_tof"] = matrix_to_json(rig.e_tof().matrix());
  j["width"] = rig.width();
  j["height"] = rig.height();
  return j.dump(2);
}

SceneSpec parse_scene(const std::string& text) {
  const json j = parse_json(text, ErrorCode::InvalidArgument);
  SceneSpec s;
  try {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "square-plane") {
      s.shape = SceneShape::SquarePlane;
    } else if (shape == "box") {
      s.shape = SceneShape::Box;
    } else if (shape == "sphere") {
      s.shape = SceneShape::Sphere;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown shape '" + shape + "'");
    }
    if (j.contains("pose")) s.pose = Extrinsics::orthonormalized(matrix_from_json(j, "pose"), kCalibrationTolerance);
    s.extent = j.at("extent").get<double>();
    s.density = j.value("density", s.density);
    s.foreground = j.value("foreground", 1.0);
    s.background = j.value("background", 0.0);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("scene: ") + e.what());
  }
  s.validate();
  return s;
}

SceneSpec read_scene(const std::filesystem::path& path) { return parse_scene(read_text_file(path)); }

std::string eval_report_json(const EvalReport& r) {
  json j;
  j["cd"] = r.cd;
  j["hd"] = r.hd;
  j["normalized"] = r.normalized;
  j["pred_count"] = r.pred_count;
  j["gt_count"] = r.gt_count;
  return j.dump();
}

void write_trace_jsonl(std::ostream& out, const RefineTrace& trace) {
  for (const auto& r : trace.records) {
    json j;
    j["event"] = "iteration";
    j["iteration"] = r.iteration;
    j["window"] = r.window;
    j["total"] = r.total;
    j["l_cd"] = r.l_cd;
    j["l_hd"] = r.l_hd;
    j["l_gs"] = r.l_gs;
    j["step"] = r.step;
    j["accepted"] = r.accepted;
    j["hull_size"] = r.hull_size;
    j["culled"] = r.culled;
    out << j.dump() << '\n';
  }
  json s;
  s["event"] = "summary";
  s["initial_loss"] = trace.initial_loss;
  s["final_loss"] = trace.final_loss;
  s["accepted_steps"] = trace.accepted_steps;
  s["iterations"] = trace.records.size();
  s["stop_reason"] = trace.stop_reason;
  out << s.dump() << '\n';
}

}  // namespace egsr
