#include "equipart/solver.hpp"

#include <cmath>

namespace equipart {
namespace {

Vec line(double angle, double offset) {
  Vec u(3);
  u << std::cos(angle), std::sin(angle), -offset;
  return u / u.norm();
}

struct Sweep {
  const MassOracle& oracle;
  double alpha;
  Vec first;

  Configuration pair(double beta) const {
    const double c = halving_offset(oracle, make_vec({std::cos(beta), std::sin(beta)}));
    Configuration cfg;
    cfg.dim = 2;
    cfg.u = {first, line(beta, c)};
    return cfg;
  }
  // Quarter deficit of the ++ region; positive at beta = alpha, negative at alpha + pi.
  double deficit(double beta) const { return oracle.masses(pair(beta))[0] - 0.25 * oracle.total; }
};

SolveReport sweep_once(const MassOracle& oracle, double alpha, double target) {
  const double c1 = halving_offset(oracle, make_vec({std::cos(alpha), std::sin(alpha)}));
  Sweep s{oracle, alpha, line(alpha, c1)};
  constexpr int kScan = 16;
  double lo = alpha, flo = s.deficit(lo);
  double hi = lo, fhi = flo;
  bool bracket = false;
  for (int k = 1; k <= kScan; ++k) {
    hi = alpha + kPi * k / kScan;
    fhi = s.deficit(hi);
    if (flo > 0.0 && fhi <= 0.0) {
      bracket = true;
      break;
    }
    lo = hi;
    flo = fhi;
  }
  SolveReport rep;
  rep.method = "sweep";
  if (!bracket) {
    rep.status = Status::stalled;
    rep.message = "no sign change of the quarter deficit at sweep resolution";
    return rep;
  }
  int iters = 0;
  for (; iters < 80 && hi - lo > 1e-15; ++iters) {
    const double mid = 0.5 * (lo + hi);
    (s.deficit(mid) > 0.0 ? lo : hi) = mid;
  }
  // Take whichever end balances better.
  const Configuration a = s.pair(lo), b = s.pair(hi);
  const MassVector ma = oracle.masses(a), mb = oracle.masses(b);
  const double ra = residual_from_masses(ma, oracle.total), rb = residual_from_masses(mb, oracle.total);
  rep.config = ra <= rb ? a : b;
  rep.masses = ra <= rb ? ma : mb;
  rep.residual = std::min(ra, rb);
  rep.iterations = iters;
  rep.status = rep.residual < target ? Status::converged : Status::stalled;
  return rep;
}

}  // namespace

SolveReport solve_2d(const MassOracle& oracle, const SolveOptions& options) {
  if (oracle.dim != 2) throw InputError("solve_2d needs a planar measure");
  const double target = std::max(options.target, oracle.residual_floor());
  SolveReport best;
  for (int start = 0; start < options.max_starts; ++start) {
    const double alpha = kPi * radical_inverse(options.seed + static_cast<unsigned>(start) + 1, 3);
    SolveReport rep = sweep_once(oracle, alpha, target);
    if (!rep.converged() && rep.config.count() == 2 && oracle.granularity == 0.0) {
      RefineOptions ro;
      ro.target = target;
      SolveReport polished = refine(oracle, rep.config, ro);
      polished.iterations += rep.iterations;
      polished.method = "sweep+refine";
      rep = polished;
    }
    if (rep.converged()) return rep;
    if (best.config.count() == 0 || rep.residual < best.residual) best = rep;
  }
  best.status = Status::stalled;
  if (best.message.empty()) best.message = "all sweep starts failed";
  return best;
}

SolveReport solve_2d(const Measure& measure, const SolveOptions& options) { return solve_2d(make_oracle(measure), options); }

}  // namespace equipart
