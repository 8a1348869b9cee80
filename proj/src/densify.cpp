#include "egsr/densify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "egsr/kdtree.hpp"
#include "egsr/sampling.hpp"

namespace egsr {

void DensifyConfig::validate() const {
  if (rate < 2) throw Error(ErrorCode::InvalidArgument, "upsampling rate must be at least 2");
  if (k_interp < 2) throw Error(ErrorCode::InvalidArgument, "k_interp must be at least 2");
  if (!(dedupe_eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "dedupe_eps must be positive");
}

namespace {

/// Hash grid with cell size eps for "is anything within eps" lookups.
class ProximitySet {
 public:
  explicit ProximitySet(double eps) : eps_(eps), eps2_(eps * eps) {}

  bool contains_near(Point3 p) const {
    const Key k = key(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = cells_.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == cells_.end()) continue;
          for (const Point3& q : it->second) {
            if (squared_norm(q - p) <= eps2_) return true;
          }
        }
      }
    }
    return false;
  }

  void insert(Point3 p) { cells_[key(p)].push_back(p); }

 private:
  using Key = std::array<std::int64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto c : k) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  Key key(Point3 p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / eps_)), static_cast<std::int64_t>(std::floor(p.y / eps_)),
            static_cast<std::int64_t>(std::floor(p.z / eps_))};
  }

  double eps_;
  double eps2_;
  std::unordered_map<Key, std::vector<Point3>, KeyHash> cells_;
};

}  // namespace

PointCloud3 densify(const PointCloud3& cloud, const DensifyConfig& cfg) {
  cfg.validate();
  const std::size_t n = cloud.size();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "densify needs at least 2 points");
  const std::size_t needed = (cfg.rate - 1) * n;

  ProximitySet seen(cfg.dedupe_eps);
  std::vector<Point3> current(cloud.begin(), cloud.end());
  for (const auto& p : current) seen.insert(p);
  std::vector<Point3> generated;

  while (generated.size() < needed) {
    const SpatialIndex3 index = build_index(std::span<const Point3>(current));
    const std::size_t k = std::min(cfg.k_interp + 1, current.size());
    const std::size_t before = generated.size();
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (const Neighbor& nb : index.knn(coords(current[i]), k)) {
        if (nb.index == i) continue;
        const Point3 mid = 0.5 * (current[i] + current[nb.index]);
        if (seen.contains_near(mid)) continue;
        seen.insert(mid);
        generated.push_back(mid);
      }
    }
    if (generated.size() == before) {
      throw Error(ErrorCode::TooFewPoints, "midpoint insertion stalled; points closer than dedupe_eps");
    }
    current.insert(current.end(), generated.begin() + static_cast<std::ptrdiff_t>(before), generated.end());
  }

  std::vector<Point3> out(cloud.begin(), cloud.end());
  out.reserve(cfg.rate * n);
  const PointCloud3 extra = bin_downsample(PointCloud3(std::move(generated)), needed);
  out.insert(out.end(), extra.begin(), extra.end());
  return PointCloud3(std::move(out));
}

}  // namespace egsr
