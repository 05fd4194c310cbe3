#include "equipart/curve.hpp"
#include "equipart/sigma.hpp"
#include "equipart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>

namespace equipart {
namespace {

Vec through_point(const Vec& normal, const Vec& point) {
  const int n = static_cast<int>(normal.size());
  Vec u(n + 1);
  u.head(n) = normal;
  u(n) = -normal.dot(point);
  return u / u.norm();
}

// Lifted image of a hyperplane under the affine reflection.
Vec reflect_plane(const AffineReflection& r, const Vec& u) {
  const int n = r.dim();
  const Eigen::VectorXd a = u.head(n);
  const Eigen::VectorXd la = r.linear() * a;
  Vec out(n + 1);
  out.head(n) = la;
  out(n) = u(n) + a.dot(r.origin) - la.dot(r.origin);
  return out / out.norm();
}

void check_symmetry(const MassOracle& oracle, const AffineReflection& r, double tol, const char* what) {
  const double defect = symmetry_defect(oracle, r);
  if (defect > tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "symmetry check failed: measure is not %s (defect %.3g > %.3g)", what, defect, tol);
    throw InputError(buf);
  }
}

Subspace checked_subspace(const Subspace& s, int dirs, const char* what) {
  if (s.point.size() != 4) throw InputError(std::string(what) + ": point must lie in R^4");
  if (static_cast<int>(s.directions.size()) != dirs)
    throw InputError(std::string(what) + ": expected " + std::to_string(dirs) + " spanning directions");
  for (const auto& d : s.directions)
    if (d.size() != 4) throw InputError(std::string(what) + ": directions must lie in R^4");
  return s;
}

// Cells of the full configuration on the positive side of the first hyperplane, re-indexed.
MassVector positive_half(const MassVector& full) {
  MassVector out(full.size() / 2);
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = full[2 * b];
  return out;
}

SolveReport finish(const MassOracle& oracle, Configuration cfg, const SolveOptions& options, SolveReport inner,
                   const std::string& method) {
  SolveReport rep;
  rep.method = method;
  rep.config = std::move(cfg);
  rep.masses = oracle.masses(rep.config);
  rep.residual = residual_from_masses(rep.masses, oracle.total);
  rep.iterations = inner.iterations;
  const double target = std::max(options.target, oracle.residual_floor());
  if (rep.residual < target) {
    rep.status = Status::converged;
    return rep;
  }
  if (!inner.converged()) {
    rep.status = inner.status;
    rep.message = "inner 3D solve failed: " + inner.message;
    return rep;
  }
  // Lifting lost accuracy; polish with the prescribed plane frozen.
  RefineOptions ro;
  ro.target = target;
  ro.frozen = {true, false, false, false};
  SolveReport polished = refine(oracle, rep.config, ro);
  polished.iterations += rep.iterations;
  polished.method = method + "+refine";
  return polished;
}

}  // namespace

double symmetry_defect(const MassOracle& oracle, const AffineReflection& reflection, int probes) {
  if (reflection.dim() != oracle.dim) throw InputError("symmetry_defect: dimension mismatch");
  const int n = oracle.dim;
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    Configuration c, rc;
    c.dim = rc.dim = n;
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<unsigned>(p * n + i);
      const Vec a = halton_direction(idx, n);
      const double shift = (radical_inverse(idx + 1, 7) - 0.5) * oracle.scale;
      Vec u(n + 1);
      u.head(n) = a;
      u(n) = -(a.dot(oracle.center) + shift);
      u /= u.norm();
      c.u.push_back(u);
      rc.u.push_back(reflect_plane(reflection, u));
    }
    const MassVector m = oracle.masses(c), rm = oracle.masses(rc);
    for (std::size_t b = 0; b < m.size(); ++b) worst = std::max(worst, std::abs(m[b] - rm[b]) / oracle.total);
  }
  return worst;
}

std::vector<Configuration> loop_seeds(int count) {
  const auto tr = canonical_transitions();
  std::vector<Configuration> out;
  for (int k = 0; k < count; ++k) out.push_back(sigma_loop_config(kTwoPi * (k + 0.5) / count, tr));
  return out;
}

namespace {

// Solutions for the tube reached from the curve measure. They do not depend on the target, so
// they are computed on demand and kept.
class TubeStarts {
 public:
  static TubeStarts& instance() {
    static TubeStarts t;
    return t;
  }

  // k-th start in the fixed enumeration; nullopt once the enumeration is exhausted.
  std::optional<SolveReport> get(std::size_t k) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (legs_.size() <= k) {
      if (!extend()) return std::nullopt;
    }
    return legs_[k];
  }

 private:
  static constexpr std::size_t kMaxStarts = 64;

  TubeStarts() : curve_(make_oracle(gamma4_measure())), tube_(make_oracle(gamma4_tube())), transitions_(canonical_transitions()) {}

  // Phases along the loop in van der Corput order, so any prefix is spread over the circle.
  bool extend() {
    if (legs_.size() >= kMaxStarts) return false;
    const double phase = 0.1 + kTwoPi * radical_inverse(static_cast<unsigned>(legs_.size()) + 1, 2);
    const Configuration start = sigma_loop_config(phase, transitions_);
    legs_.push_back(continue_path(MeasurePath{curve_, tube_}, {start}, Gauge{}, 1e-12));
    return true;
  }

  std::mutex mutex_;
  MassOracle curve_, tube_;
  std::vector<int> transitions_;
  std::vector<SolveReport> legs_;
};

}  // namespace

SolveReport solve_4d_symmetric(const MassOracle& oracle, const Subspace& plane, const Symmetric4dOptions& options) {
  if (oracle.dim != 4) throw InputError("solve_4d_symmetric needs a measure on R^4");
  checked_subspace(plane, 2, "symmetry plane");
  const AffineReflection refl = AffineReflection::through(plane.point, plane.directions);
  check_symmetry(oracle, refl, options.symmetry_tol, "symmetric about the plane");

  // Frame: origin on L nearest the centroid, L along the last two axes, unit-RMS scale.
  const Mat l = orthonormalize(plane.directions);
  const Mat full = complete_basis(l, 4);
  Mat basis(4, 4);
  basis.col(0) = full.col(2);
  basis.col(1) = full.col(3);
  basis.col(2) = full.col(0);
  basis.col(3) = full.col(1);
  const Eigen::VectorXd rel = oracle.center - plane.point;
  const Vec origin = plane.point + l * (l.transpose() * rel);
  const double s = std::max(oracle.scale, 1e-12) / std::sqrt(2.0);
  const AffineFrame frame{s * basis, origin};
  const MassOracle local = in_frame(oracle, frame);
  const double target = std::max(options.target, oracle.residual_floor());

  auto to_world = [&](const SolveReport& r, const std::string& method) {
    SolveReport out = r;
    out.method = method;
    out.config = frame.to_world(r.config);
    out.masses = oracle.masses(out.config);
    out.residual = residual_from_masses(out.masses, oracle.total);
    if (r.converged() && out.residual >= target) {
      RefineOptions ro;
      ro.target = target;
      SolveReport p = refine(oracle, out.config, ro);
      p.path = r.path;
      p.iterations += r.iterations;
      p.method = method;
      return p;
    }
    return out;
  };

  // Two legs: the curve measure to a smooth tube around it, then the tube to the target.
  // Parameters in the reported path run over [0, 1] for the first leg and [1, 2] for the second.
  const MassOracle tube = make_oracle(gamma4_tube());
  SolveReport cont;
  cont.status = Status::exhausted;
  cont.method = "continuation";
  double reached = 0.0;
  int tried = 0, first_failed = 0, turned = 0;
  for (std::size_t k = 0; tried < options.continuation_starts; ++k) {
    const auto first = TubeStarts::instance().get(k);
    if (!first) break;
    if (!first->converged()) {
      ++first_failed;
      continue;
    }
    ++tried;
    SolveReport second = continue_path(MeasurePath{tube, local}, {first->config}, Gauge{}, target);
    std::vector<double> ts = first->path;
    for (double t : second.path) ts.push_back(1.0 + t);
    second.path = ts;
    second.iterations += first->iterations;
    if (second.converged()) {
      SolveReport out = to_world(second, "continuation");
      out.message = "start " + std::to_string(k) + " reached the target";
      if (out.converged()) return out;
    }
    if (second.message.find("turned back") != std::string::npos) ++turned;
    const double top = second.path.empty() ? 1.0 : *std::max_element(second.path.begin(), second.path.end());
    if (top >= reached) {
      reached = top;
      cont = to_world(second, "continuation");
      cont.status = Status::exhausted;
    }
  }
  {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "continuation exhausted, max t reached %.4f over %d starts (%d turned back to t = 0, %d failed on the smoothing leg)",
                  std::max(0.0, reached - 1.0), tried, turned, first_failed);
    cont.message = buf;
  }
  if (!options.allow_fallback) return cont;

  const auto seeds = loop_seeds(32);
  RefineOptions ro;
  ro.target = target;
  ro.max_iter = 200;
  SolveReport best;
  const std::size_t batch = std::max<std::size_t>(1, worker_count());
  std::vector<SolveReport> results(seeds.size());
  for (std::size_t first = 0; first < seeds.size(); first += batch) {
    const std::size_t count = std::min(batch, seeds.size() - first);
    parallel_for(count, [&](std::size_t j) { results[first + j] = refine(local, seeds[first + j], ro); });
    for (std::size_t k = first; k < first + count; ++k) {
      if (results[k].converged()) {
        SolveReport r = to_world(results[k], "fallback");
        r.message = "continuation failed (" + cont.message + "); multi-start seed " + std::to_string(k) + " converged";
        r.path = cont.path;
        if (r.converged()) return r;
      }
      if (best.config.count() == 0 || results[k].residual < best.residual) best = results[k];
    }
  }
  SolveReport out = to_world(best, "fallback");
  out.status = Status::exhausted;
  out.path = cont.path;
  out.message = "all strategies failed; continuation: " + cont.message;
  return out;
}

SolveReport solve_4d_symmetric(const Measure& measure, const Subspace& plane, const Symmetric4dOptions& options) {
  return solve_4d_symmetric(make_oracle(measure), plane, options);
}

SolveReport solve_4d_center(const MassOracle& oracle, const Vec& center, const std::optional<Vec>& normal,
                            const SolveOptions& options) {
  if (oracle.dim != 4) throw InputError("solve_4d_center needs a measure on R^4");
  if (center.size() != 4) throw InputError("solve_4d_center: centre must lie in R^4");
  if (normal && (normal->size() != 4 || normal->norm() < 1e-12)) throw InputError("solve_4d_center: bad normal");
  check_symmetry(oracle, AffineReflection::through(center, {}), 1e-8, "centrally symmetric");

  const Vec n1 = normal ? Vec(*normal / normal->norm()) : make_vec({1.0, 0.0, 0.0, 0.0});
  const Vec h1 = through_point(n1, center);
  Mat n1m(4, 1);
  n1m.col(0) = n1;
  const Mat e = complete_basis(n1m, 4).rightCols(3);  // columns span n1-perp

  // Linear hyperplanes through the centre, seen on the chart n1 . (x - O) = 1.
  auto lift = [&](const Vec& uz) {
    const Eigen::VectorXd a = uz.head(3);
    const Eigen::VectorXd nn = e * a + uz(3) * n1;  // a.z >= b  with uz = (a, -b)
    return through_point(Vec(nn), center);
  };
  auto lift_all = [&](const Configuration& cz) {
    Configuration c;
    c.dim = 4;
    c.u = {h1};
    for (const Vec& u : cz.u) c.u.push_back(lift(u));
    return c;
  };
  MassOracle view;
  view.dim = 3;
  view.total = 0.5 * oracle.total;
  view.granularity = oracle.granularity;
  view.center = Vec::Zero(3);
  view.scale = 1.0;
  view.masses = [&](const Configuration& cz) { return positive_half(oracle.masses(lift_all(cz))); };

  SolveOptions inner = options;
  inner.target = std::max(options.target, oracle.residual_floor());
  const SolveReport r3 = solve_3d(view, std::nullopt, std::nullopt, inner);
  if (r3.config.count() != 3) {
    SolveReport rep = r3;
    rep.method = "center";
    rep.message = "inner 3D solve produced no configuration: " + r3.message;
    return rep;
  }
  return finish(oracle, lift_all(r3.config), options, r3, "center");
}

SolveReport solve_4d_center(const Measure& measure, const Vec& center, const std::optional<Vec>& normal,
                            const SolveOptions& options) {
  return solve_4d_center(make_oracle(measure), center, normal, options);
}

SolveReport solve_4d_mirror3(const MassOracle& oracle, const Subspace& k, const SolveOptions& options) {
  if (oracle.dim != 4) throw InputError("solve_4d_mirror3 needs a measure on R^4");
  checked_subspace(k, 3, "mirror 3-plane");
  check_symmetry(oracle, AffineReflection::through(k.point, k.directions), 1e-8, "symmetric about the 3-plane");

  const Mat basis = orthonormalize(k.directions);
  const Vec n1 = complete_basis(basis, 4).col(3);
  const Vec h1 = through_point(n1, k.point);

  auto lift = [&](const Vec& uz) {
    const Eigen::VectorXd a = basis * Eigen::VectorXd(uz.head(3));
    Vec u(5);
    u.head(4) = a;
    u(4) = uz(3) - a.dot(k.point);  // a.z >= b  <=>  (E^T a).x >= b + (E^T a).p
    return Vec(u / u.norm());
  };
  auto lift_all = [&](const Configuration& cz) {
    Configuration c;
    c.dim = 4;
    c.u = {h1};
    for (const Vec& u : cz.u) c.u.push_back(lift(u));
    return c;
  };
  MassOracle view;
  view.dim = 3;
  view.total = 0.5 * oracle.total;
  view.granularity = oracle.granularity;
  view.center = basis.transpose() * Eigen::VectorXd(oracle.center - k.point);
  view.scale = oracle.scale;
  view.masses = [&](const Configuration& cz) { return positive_half(oracle.masses(lift_all(cz))); };

  SolveOptions inner = options;
  inner.target = std::max(options.target, oracle.residual_floor());
  const SolveReport r3 = solve_3d(view, std::nullopt, std::nullopt, inner);
  if (r3.config.count() != 3) {
    SolveReport rep = r3;
    rep.method = "mirror3";
    rep.message = "inner 3D solve produced no configuration: " + r3.message;
    return rep;
  }
  return finish(oracle, lift_all(r3.config), options, r3, "mirror3");
}

SolveReport solve_4d_mirror3(const Measure& measure, const Subspace& k, const SolveOptions& options) {
  return solve_4d_mirror3(make_oracle(measure), k, options);
}

}  // namespace equipart
