#include "egsr/losses.hpp"

#include <algorithm>
#include <string>

namespace egsr {

void LossWeights::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "loss weights must be nonnegative");
  }
  if (!(alpha > 0.0 || beta > 0.0 || gamma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "at least one loss weight must be positive");
  }
}

namespace {

void require_nonempty(std::span<const Point2> r, std::span<const Point2> p) {
  if (r.empty() || p.empty()) throw Error(ErrorCode::EmptySet, "distance between point sets needs both nonempty");
}

/// Nearest neighbour in `target` for every point of `from`.
std::vector<Neighbor> match(std::span<const Point2> from, const SpatialIndex2& target) {
  std::vector<Neighbor> out;
  out.reserve(from.size());
  for (const auto& p : from) out.push_back(target.nearest(coords(p)));
  return out;
}

double sum_squared(const std::vector<Neighbor>& m) {
  double s = 0.0;
  for (const auto& n : m) s += n.squared_distance;
  return s;
}

/// Index of the largest distance (lowest index on ties).
std::size_t argmax(const std::vector<Neighbor>& m) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i].distance > m[best].distance) best = i;
  }
  return best;
}

}  // namespace

double chamfer_loss(std::span<const Point2> r, std::span<const Point2> p) {
  require_nonempty(r, p);
  return sum_squared(match(r, build_index(p))) + sum_squared(match(p, build_index(r)));
}

double chamfer_loss(const PointSet2& r, const PointSet2& p) { return chamfer_loss(r.points(), p.points()); }

double hausdorff_loss(std::span<const Point2> r, std::span<const Point2> p) {
  require_nonempty(r, p);
  const auto rp = match(r, build_index(p));
  const auto pr = match(p, build_index(r));
  return std::max(rp[argmax(rp)].distance, pr[argmax(pr)].distance);
}

double hausdorff_loss(const PointSet2& r, const PointSet2& p) { return hausdorff_loss(r.points(), p.points()); }

double gradient_smooth_loss(std::span<const Point2> v) {
  if (v.size() < 3) {
    throw Error(ErrorCode::TooFewVertices, "smoothness needs at least 3 vertices, got " + std::to_string(v.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    const Point2 g0 = v[i + 1] - v[i];
    const Point2 g1 = v[i + 2] - v[i + 1];
    s += norm(g1 - g0);
  }
  return s;
}

double gradient_smooth_loss(const HullPolygon& hull) { return gradient_smooth_loss(hull.vertices); }

EdgeTarget::EdgeTarget(const PointSet2& edges)
    : points_(edges.begin(), edges.end()),
      index_(edges.empty() ? throw Error(ErrorCode::EmptySet, "edge map is empty") : build_index(edges)) {}

LossReport combined_loss(const EdgeTarget& edges, std::span<const Point2> vertices, const LossWeights& w) {
  w.validate();
  const auto r = edges.points();
  require_nonempty(r, vertices);
  LossReport rep;
  rep.l_gs = gradient_smooth_loss(vertices);

  const auto rp = match(r, build_index(vertices));
  const auto pr = match(vertices, edges.index());
  rep.l_cd = sum_squared(rp) + sum_squared(pr);

  const std::size_t irp = argmax(rp);
  const std::size_t ipr = argmax(pr);
  if (rp[irp].distance >= pr[ipr].distance) {
    rep.matches.hausdorff = {HausdorffDirection::EdgeToHull, irp, rp[irp].index, rp[irp].distance};
  } else {
    rep.matches.hausdorff = {HausdorffDirection::HullToEdge, pr[ipr].index, ipr, pr[ipr].distance};
  }
  rep.l_hd = rep.matches.hausdorff.distance;
  rep.total = w.alpha * rep.l_cd + w.beta * rep.l_hd + w.gamma * rep.l_gs;

  rep.grad.assign(vertices.size(), Point2{});
  rep.matches.edge_to_hull.reserve(rp.size());
  rep.matches.hull_to_edge.reserve(pr.size());
  for (std::size_t i = 0; i < rp.size(); ++i) {
    const std::size_t j = rp[i].index;
    rep.matches.edge_to_hull.push_back(j);
    rep.grad[j] = rep.grad[j] + (2.0 * w.alpha) * (vertices[j] - r[i]);
  }
  for (std::size_t j = 0; j < pr.size(); ++j) {
    const std::size_t i = pr[j].index;
    rep.matches.hull_to_edge.push_back(i);
    rep.grad[j] = rep.grad[j] + (2.0 * w.alpha) * (vertices[j] - r[i]);
  }

  const HausdorffPair& hd = rep.matches.hausdorff;
  if (hd.distance > 0.0) {
    const Point2 d = vertices[hd.hull_index] - r[hd.edge_index];
    rep.grad[hd.hull_index] = rep.grad[hd.hull_index] + (w.beta / hd.distance) * d;
  }

  for (std::size_t i = 0; i + 2 < vertices.size(); ++i) {
    const Point2 s = vertices[i + 2] - 2.0 * vertices[i + 1] + vertices[i];
    const double len = norm(s);
    if (!(len > 0.0)) continue;
    const Point2 u = (w.gamma / len) * s;
    rep.grad[i] = rep.grad[i] + u;
    rep.grad[i + 1] = rep.grad[i + 1] - 2.0 * u;
    rep.grad[i + 2] = rep.grad[i + 2] + u;
  }
  return rep;
}

LossReport combined_loss(const PointSet2& r_edge, const HullPolygon& hull, const LossWeights& w) {
  if (r_edge.empty()) throw Error(ErrorCode::EmptySet, "edge map is empty");
  return combined_loss(EdgeTarget(r_edge), hull.vertices, w);
}

}  // namespace egsr
