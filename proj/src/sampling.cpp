#include "egsr/sampling.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace egsr {

namespace {

struct Bounds {
  Point3 lo;
  Point3 hi;
  double extent() const { return std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z}); }
};

Bounds bounds_of(std::span<const Point3> pts) {
  Bounds b{pts[0], pts[0]};
  for (const auto& p : pts) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
  }
  return b;
}

using VoxelKey = std::array<std::int64_t, 3>;

struct VoxelHash {
  std::size_t operator()(const VoxelKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : k) {
      h ^= static_cast<std::uint64_t>(c);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Bin assignment of every point, bins numbered by first occurrence.
struct Binning {
  std::vector<std::size_t> bin_of;
  std::size_t bins = 0;
};

Binning assign_bins(std::span<const Point3> pts, const Point3& origin, double voxel) {
  Binning b;
  b.bin_of.resize(pts.size());
  std::unordered_map<VoxelKey, std::size_t, VoxelHash> ids;
  ids.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point3 d = pts[i] - origin;
    const VoxelKey key{static_cast<std::int64_t>(std::floor(d.x / voxel)),
                       static_cast<std::int64_t>(std::floor(d.y / voxel)),
                       static_cast<std::int64_t>(std::floor(d.z / voxel))};
    auto [it, inserted] = ids.try_emplace(key, b.bins);
    if (inserted) ++b.bins;
    b.bin_of[i] = it->second;
  }
  return b;
}

std::size_t distinct_positions(std::span<const Point3> pts) {
  std::vector<Point3> sorted(pts.begin(), pts.end());
  auto less = [](const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  };
  std::sort(sorted.begin(), sorted.end(), less);
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::vector<Point3> centroids(std::span<const Point3> pts, const Binning& binning) {
  std::vector<Point3> sum(binning.bins);
  std::vector<std::size_t> count(binning.bins, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sum[binning.bin_of[i]] = sum[binning.bin_of[i]] + pts[i];
    ++count[binning.bin_of[i]];
  }
  for (std::size_t b = 0; b < binning.bins; ++b) sum[b] = (1.0 / static_cast<double>(count[b])) * sum[b];
  return sum;
}

/// Greedy farthest-point selection seeded with the first candidate; returns
/// the chosen indices in ascending order.
std::vector<std::size_t> farthest_point_selection(std::span<const Point3> pts, std::size_t count) {
  std::vector<double> dist(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(pts.size(), false);
  std::vector<std::size_t> picked;
  picked.reserve(count);
  std::size_t next = 0;
  while (picked.size() < count) {
    chosen[next] = true;
    picked.push_back(next);
    const Point3 c = pts[next];
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (chosen[i]) continue;
      dist[i] = std::min(dist[i], squared_norm(pts[i] - c));
      if (dist[i] > best_d) {
        best_d = dist[i];
        best = i;
      }
    }
    next = best;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

BinningResult bin_downsample_detailed(const PointCloud3& cloud, std::size_t target_count) {
  if (target_count == 0) throw Error(ErrorCode::InvalidTarget, "target count must be positive");
  if (target_count > cloud.size()) {
    throw Error(ErrorCode::InvalidTarget, "target count " + std::to_string(target_count) +
                                              " exceeds cloud size " + std::to_string(cloud.size()));
  }
  if (target_count == cloud.size()) return {cloud, 0.0, cloud.size()};

  const auto pts = cloud.points();
  const Bounds box = bounds_of(pts);
  const double extent = box.extent();

  // A voxel wider than the bounding box holds everything in one bin.
  double hi = extent > 0.0 ? extent * 2.0 : 1.0;
  double lo = hi;
  Binning lo_bins = assign_bins(pts, box.lo, lo);
  if (lo_bins.bins < target_count) {
    const std::size_t distinct = distinct_positions(pts);
    if (distinct < target_count) {
      throw Error(ErrorCode::InvalidTarget, "cloud has only " + std::to_string(distinct) +
                                                " distinct positions, fewer than target " +
                                                std::to_string(target_count));
    }
    // Shrink until enough bins are occupied; a lower bracket for the bisection.
    while (lo_bins.bins < target_count) {
      hi = lo;
      lo *= 0.5;
      if (lo == 0.0) throw Error(ErrorCode::InvalidTarget, "could not resolve distinct positions into bins");
      lo_bins = assign_bins(pts, box.lo, lo);
    }
    for (int iter = 0; iter < 64; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      Binning mid_bins = assign_bins(pts, box.lo, mid);
      if (mid_bins.bins >= target_count) {
        lo = mid;
        lo_bins = std::move(mid_bins);
        if (lo_bins.bins == target_count) break;
      } else {
        hi = mid;
      }
    }
  }

  const std::vector<Point3> cents = centroids(pts, lo_bins);
  std::vector<Point3> out;
  out.reserve(target_count);
  if (cents.size() == target_count) {
    out = cents;
  } else {
    for (std::size_t i : farthest_point_selection(cents, target_count)) out.push_back(cents[i]);
  }
  return {PointCloud3(std::move(out)), lo, lo_bins.bins};
}

PointCloud3 bin_downsample(const PointCloud3& cloud, std::size_t target_count) {
  return bin_downsample_detailed(cloud, target_count).cloud;
}

Normalization normalize_to_unit(const PointCloud3& cloud) {
  const Bounds box = bounds_of(cloud.points());
  const Point3 offset = 0.5 * (box.lo + box.hi);
  double scale = 0.0;
  for (const auto& p : cloud) {
    const Point3 d = p - offset;
    scale = std::max({scale, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  if (!(scale > 0.0)) scale = 1.0;
  return {apply_normalization(cloud, scale, offset), scale, offset};
}

PointCloud3 apply_normalization(const PointCloud3& cloud, double scale, Point3 offset) {
  std::vector<Point3> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) {
    const Point3 d = p - offset;
    out.push_back({d.x / scale, d.y / scale, d.z / scale});
  }
  return PointCloud3(std::move(out));
}

PointCloud3 denormalize(const PointCloud3& cloud, double scale, Point3 offset) {
  std::vector<Point3> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) out.push_back(scale * p + offset);
  return PointCloud3(std::move(out));
}

}  // namespace egsr
