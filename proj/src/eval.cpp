#include "egsr/eval.hpp"

#include <algorithm>
#include <optional>

#include "egsr/kdtree.hpp"
#include "egsr/sampling.hpp"

namespace egsr {

namespace {

struct Directed {
  double sum_sq = 0.0;
  double max_dist = 0.0;
};

Directed directed(const PointCloud3& from, const SpatialIndex3& to) {
  Directed d;
  for (const auto& p : from) {
    const Neighbor n = to.nearest(coords(p));
    d.sum_sq += n.squared_distance;
    d.max_dist = std::max(d.max_dist, n.distance);
  }
  return d;
}

}  // namespace

EvalReport eval_metrics(const PointCloud3& pred, const PointCloud3& gt, bool normalize) {
  EvalReport rep;
  rep.normalized = normalize;
  rep.pred_count = pred.size();
  rep.gt_count = gt.size();

  const PointCloud3* a = &pred;
  const PointCloud3* b = &gt;
  std::optional<PointCloud3> pred_n;
  std::optional<PointCloud3> gt_n;
  if (normalize) {
    const Normalization norm = normalize_to_unit(gt);
    rep.scale = norm.scale;
    pred_n = apply_normalization(pred, norm.scale, norm.offset);
    gt_n = norm.cloud;
    a = &*pred_n;
    b = &*gt_n;
  }
  const Directed ab = directed(*a, build_index(*b));
  const Directed ba = directed(*b, build_index(*a));
  rep.cd = (ab.sum_sq + ba.sum_sq) / static_cast<double>(a->size() + b->size());
  rep.hd = std::max(ab.max_dist, ba.max_dist);
  return rep;
}

}  // namespace egsr
