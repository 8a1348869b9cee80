#include "egsr/geometry.hpp"

#include <cstdint>
#include <unordered_map>

namespace egsr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BehindCamera: return "BehindCamera";
    case ErrorCode::AllPointsCulled: return "AllPointsCulled";
    case ErrorCode::InvalidCalibration: return "InvalidCalibration";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateCollinear: return "DegenerateCollinear";
    case ErrorCode::HullFailed: return "HullFailed";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::EmptyEdgeMap: return "EmptyEdgeMap";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::TruncatedData: return "TruncatedData";
    case ErrorCode::UnsupportedMagic: return "UnsupportedMagic";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::ShapeOutOfFrame: return "ShapeOutOfFrame";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

PointCloud3::PointCloud3(std::vector<Point3> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::EmptyInput, "point cloud must contain at least one point");
  for (const auto& p : points_) {
    if (!is_finite(p)) throw Error(ErrorCode::InvalidArgument, "point cloud contains a non-finite coordinate");
  }
}

PointSet2::PointSet2(std::vector<Point2> points, PointSetRole role)
    : points_(std::move(points)), role_(role) {
  for (const auto& p : points_) {
    if (!is_finite(p)) throw Error(ErrorCode::InvalidArgument, "point set contains a non-finite coordinate");
  }
}

namespace {

struct CellKey {
  std::int64_t i;
  std::int64_t j;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.i * 73856093LL ^ k.j * 19349663LL);
  }
};

}  // namespace

Deduplicated deduplicate(std::span<const Point2> points, double tolerance) {
  Deduplicated out;
  if (tolerance <= 0.0) {
    out.points.assign(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) out.kept.push_back(i);
    return out;
  }
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid;
  const double tol2 = tolerance * tolerance;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2 p = points[i];
    const CellKey key{static_cast<std::int64_t>(std::floor(p.u / tolerance)),
                      static_cast<std::int64_t>(std::floor(p.v / tolerance))};
    bool duplicate = false;
    for (std::int64_t di = -1; di <= 1 && !duplicate; ++di) {
      for (std::int64_t dj = -1; dj <= 1 && !duplicate; ++dj) {
        auto it = grid.find({key.i + di, key.j + dj});
        if (it == grid.end()) continue;
        for (std::size_t slot : it->second) {
          if (squared_norm(out.points[slot] - p) <= tol2) {
            duplicate = true;
            break;
          }
        }
      }
    }
    if (duplicate) continue;
    grid[key].push_back(out.points.size());
    out.points.push_back(p);
    out.kept.push_back(i);
  }
  return out;
}

}  // namespace egsr
