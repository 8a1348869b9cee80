#pragma once

#include <cstddef>

#include "egsr/geometry.hpp"

namespace egsr {

struct EvalReport {
  /// Sum of squared nearest-neighbour distances in both directions divided
  /// by |pred| + |gt|.
  double cd = 0.0;
  /// Symmetric Hausdorff distance.
  double hd = 0.0;
  bool normalized = false;
  /// Divisor applied to both clouds (1 when not normalized).
  double scale = 1.0;
  std::size_t pred_count = 0;
  std::size_t gt_count = 0;
};

/// With `normalize`, both clouds are mapped through the ground truth's
/// normalize_to_unit transform first.
EvalReport eval_metrics(const PointCloud3& pred, const PointCloud3& gt, bool normalize = true);

}  // namespace egsr
