#include "equipart/solver.hpp"

#include <cmath>

namespace equipart {
namespace {

Vec plane(const Vec& n, double c) {
  Vec u(4);
  u << n(0), n(1), n(2), -c;
  return u / u.norm();
}

double upper_mass(const MassOracle& oracle, const Vec& u) {
  Configuration cfg;
  cfg.dim = 3;
  cfg.u = {u};
  return oracle.masses(cfg)[0];
}

// Planes through the line point + s * dir, rotated by psi; f(psi + pi) = -f(psi) up to the
// mass on the plane, so a sign change lies in [0, pi].
Vec pencil_halving(const MassOracle& oracle, const Vec& point, const Vec& dir, int& iterations) {
  const Mat basis = tangent_basis(dir.normalized());
  auto normal = [&](double psi) -> Vec { return std::cos(psi) * basis.col(0) + std::sin(psi) * basis.col(1); };
  auto at = [&](double psi) { const Vec n = normal(psi); return plane(n, n.dot(point)); };
  const double half = 0.5 * oracle.total;
  auto f = [&](double psi) { return upper_mass(oracle, at(psi)) - half; };
  const double tol = std::max(1e-14 * oracle.total, 0.5 * oracle.granularity);
  double lo = 0.0, flo = f(lo);
  if (std::abs(flo) <= tol) return at(lo);
  constexpr int kScan = 16;
  double hi = lo, fhi = flo;
  bool found = false;
  for (int k = 1; k <= kScan; ++k) {
    hi = kPi * k / kScan;
    fhi = f(hi);
    if (std::abs(fhi) <= tol) return at(hi);
    if ((flo > 0.0) != (fhi > 0.0)) {
      found = true;
      break;
    }
    lo = hi;
    flo = fhi;
  }
  if (!found) throw NumericalError("no halving plane found in the pencil");
  for (iterations = 0; iterations < 100 && hi - lo > 1e-15; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol) return at(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(flo) <= std::abs(f(hi)) ? at(lo) : at(hi);
}

}  // namespace

SolveReport solve_3d(const MassOracle& oracle, const std::optional<Vec>& a, const std::optional<Vec>& b,
                     const SolveOptions& options) {
  if (oracle.dim != 3) throw InputError("solve_3d needs a measure on R^3");
  if (b && !a) throw InputError("solve_3d: second point given without the first");
  if (a && a->size() != 3) throw InputError("solve_3d: prescribed point must have 3 coordinates");
  if (b && b->size() != 3) throw InputError("solve_3d: prescribed point must have 3 coordinates");
  const double target = std::max(options.target, oracle.residual_floor());

  int pencil_iters = 0;
  Vec h1;
  if (a) {
    Vec dir = make_vec({1.0, 0.0, 0.0});
    if (b && (*b - *a).norm() > 1e-12 * std::max(1.0, oracle.scale)) dir = (*b - *a).normalized();
    h1 = pencil_halving(oracle, *a, dir, pencil_iters);
  } else {
    const Vec n = make_vec({1.0, 0.0, 0.0});
    h1 = plane(n, halving_offset(oracle, n));
  }

  const int starts = std::max(1, options.max_starts);
  const std::size_t batch = std::max<std::size_t>(1, worker_count());
  std::vector<SolveReport> results(static_cast<std::size_t>(starts));
  RefineOptions ro;
  ro.target = target;
  ro.frozen = {true, false, false};
  ro.max_iter = 60;
  for (std::size_t first = 0; first < results.size(); first += batch) {
    const std::size_t count = std::min(batch, results.size() - first);
    parallel_for(count, [&](std::size_t j) {
      const std::size_t s = first + j;
      const unsigned base = 2U * (static_cast<unsigned>(s) + 64U * options.seed);
      const Vec n2 = halton_direction(base, 3), n3 = halton_direction(base + 1, 3);
      Configuration cfg;
      cfg.dim = 3;
      cfg.u = {h1, plane(n2, halving_offset(oracle, n2)), plane(n3, halving_offset(oracle, n3))};
      if (!delta_condition(cfg, ro.delta_tol)) {
        results[s].status = Status::delta_violation;
        results[s].message = "seed violates the delta condition";
        return;
      }
      results[s] = refine(oracle, cfg, ro);
    });
    for (std::size_t s = first; s < first + count; ++s) {
      if (results[s].converged()) {
        SolveReport rep = results[s];
        rep.method = a ? "pencil+refine" : "halving+refine";
        rep.iterations += pencil_iters;
        rep.message = "start " + std::to_string(s);
        return rep;
      }
    }
  }
  SolveReport best;
  for (const auto& r : results)
    if (r.config.count() == 3 && (best.config.count() == 0 || r.residual < best.residual)) best = r;
  best.status = Status::exhausted;
  best.method = "halving+refine";
  best.message = "no start converged among " + std::to_string(starts);
  return best;
}

SolveReport solve_3d(const Measure& measure, const std::optional<Vec>& a, const std::optional<Vec>& b,
                     const SolveOptions& options) {
  return solve_3d(make_oracle(measure), a, b, options);
}

}  // namespace equipart
