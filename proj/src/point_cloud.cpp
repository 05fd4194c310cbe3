#include "equipart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace equipart {
namespace {

double min_pairwise(const std::vector<Vec>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, (pts[i] - pts[j]).norm());
  return best;
}

Measure smoothed(const std::vector<Vec>& pts, double sigma) {
  GaussianMixture g;
  g.dim = 4;
  const Mat f = sigma * Mat::Identity(4, 4);
  for (const Vec& p : pts) {
    g.weights.push_back(1.0);
    g.means.push_back(p);
    g.factors.push_back(f);
  }
  return Measure(std::move(g));
}

int max_of(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

std::vector<int> open_orthant_counts(const std::vector<Vec>& points, const Configuration& config) {
  std::vector<int> counts(static_cast<std::size_t>(config.cells()), 0);
  for (const Vec& p : points) {
    int cell = 0;
    if (config.strict_orthant_of(p, cell)) ++counts[static_cast<std::size_t>(cell)];
  }
  return counts;
}

CloudReport partition_point_cloud(const std::vector<Vec>& points, int d, const CloudOptions& options) {
  if (d < 1) throw InputError("cloud: d must be positive");
  if (points.size() != static_cast<std::size_t>(16 * d))
    throw InputError("cloud: expected " + std::to_string(16 * d) + " points, got " + std::to_string(points.size()));
  for (const Vec& p : points)
    if (p.size() != 4) throw InputError("cloud: points must lie in R^4");
  const double spread = min_pairwise(points);
  if (!(spread > 0.0)) throw InputError("cloud: points must be distinct");

  Vec mean = Vec::Zero(4);
  for (const Vec& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  double extent = 0.0;
  for (const Vec& p : points) extent = std::max(extent, (p - mean).norm());

  const Subspace plane = options.plane ? *options.plane
                                       : Subspace{mean, {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const AffineReflection refl = AffineReflection::through(plane.point, plane.directions);
  const double match_tol = 1e-9 * std::max(1.0, extent);

  std::vector<Vec> cloud = points;
  if (options.plane) {
    for (const Vec& p : points) {
      const Vec q = refl.apply(p);
      const bool found = std::any_of(points.begin(), points.end(), [&](const Vec& r) { return (r - q).norm() <= match_tol; });
      if (!found) throw InputError("cloud: point set is not symmetric about the given plane");
    }
  } else {
    for (const Vec& p : points) {
      const Vec q = refl.apply(p);
      const bool found = std::any_of(cloud.begin(), cloud.end(), [&](const Vec& r) { return (r - q).norm() <= match_tol; });
      if (!found) cloud.push_back(q);
    }
  }

  CloudReport out;
  out.bound = options.plane ? d : 2 * d;
  Symmetric4dOptions so;
  so.seed = options.seed;
  so.symmetry_tol = 1e-7;
  so.continuation_starts = options.continuation_starts;

  // Shrink the mollifier from a width comparable to the cloud, warm-starting each level from
  // the previous hyperplanes; stop once the open orthants obey the bound. A failed warm start
  // retries with a gentler factor before a cold solve.
  const double floor_sigma = 1e-6 * std::max(extent, spread);
  out.sigma = 0.5 * std::max(extent, spread);
  out.solve = solve_4d_symmetric(smoothed(cloud, out.sigma), plane, so);
  double factor = options.shrink;
  for (out.rounds = 0;; ++out.rounds) {
    if (out.solve.config.count() == 4) {
      out.counts = open_orthant_counts(points, out.solve.config);
      out.max_count = max_of(out.counts);
      out.certified = out.max_count <= out.bound;
    }
    if (out.certified || out.rounds >= options.max_rounds || out.sigma <= floor_sigma) break;
    const double sigma = std::max(factor * out.sigma, floor_sigma);
    const Measure m = smoothed(cloud, sigma);
    SolveReport next;
    if (out.solve.converged()) next = refine(m, out.solve.config, options.track_tol, 100);
    if (!next.converged() && out.solve.converged() && factor < 0.95) {
      factor = std::sqrt(factor);
      continue;
    }
    if (!next.converged()) next = solve_4d_symmetric(m, plane, so);
    out.sigma = sigma;
    out.solve = next;
    factor = options.shrink;
  }
  return out;
}

}  // namespace equipart
