#include "equipart/curve.hpp"
#include "equipart/sigma.hpp"
#include "equipart/solver.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <limits>

namespace equipart {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd relative(const MassVector& m, double total) {
  const double share = 1.0 / static_cast<double>(m.size());
  VectorXd r(static_cast<Eigen::Index>(m.size()));
  for (std::size_t k = 0; k < m.size(); ++k) r(static_cast<Eigen::Index>(k)) = m[k] / total - share;
  return r;
}

// F(x, t) = (1 - t) dev_0(x) + t dev_1(x) with the last (dependent) entry dropped, then the gauge.
class System {
 public:
  System(const MeasurePath& path, const Gauge& gauge) : path_(path), gauge_(gauge) {}

  struct Eval {
    VectorXd d0, d1;
    double g = 0.0;
  };

  Eval eval(const Configuration& x) const {
    return {relative(path_.start.masses(x), path_.start.total), relative(path_.end.masses(x), path_.end.total), gauge_(x)};
  }

  static VectorXd value(const Eval& e, double t) {
    const auto rows = e.d0.size();
    VectorXd f(rows);
    f.head(rows - 1) = ((1.0 - t) * e.d0 + t * e.d1).head(rows - 1);
    f(rows - 1) = e.g;
    return f;
  }

  // Columns: tangent coordinates of every u_i, then t.
  MatrixXd jacobian(const Configuration& x, const std::vector<Mat>& bases, double t, const Eval& at) const {
    const int n = x.dim;
    const auto rows = at.d0.size();
    MatrixXd j(rows, x.count() * n + 1);
    for (int i = 0; i < x.count(); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (int d = 0; d < n; ++d) {
        Configuration xp = x, xm = x;
        xp.u[ui] = (x.u[ui] + kStep * bases[ui].col(d)).normalized();
        xm.u[ui] = (x.u[ui] - kStep * bases[ui].col(d)).normalized();
        j.col(i * n + d) = (value(eval(xp), t) - value(eval(xm), t)) / (2.0 * kStep);
      }
    }
    j.col(j.cols() - 1).head(rows - 1) = (at.d1 - at.d0).head(rows - 1);
    j(rows - 1, j.cols() - 1) = 0.0;
    return j;
  }

 private:
  static constexpr double kStep = 1e-6;
  const MeasurePath& path_;
  const Gauge& gauge_;
};

std::vector<Mat> bases_of(const Configuration& x) {
  std::vector<Mat> b;
  for (const Vec& u : x.u) b.push_back(tangent_basis(u));
  return b;
}

Configuration retract(const Configuration& x, const std::vector<Mat>& bases, const VectorXd& delta) {
  Configuration y = x;
  const int n = x.dim;
  for (std::size_t i = 0; i < x.u.size(); ++i)
    y.u[i] = (x.u[i] + bases[i] * delta.segment(static_cast<Eigen::Index>(i) * n, n)).normalized();
  return y;
}

VectorXd kernel_vector(const MatrixXd& j) {
  // Square up with a zero row so the thin SVD exposes the null direction.
  MatrixXd sq = MatrixXd::Zero(j.cols(), j.cols());
  sq.topRows(j.rows()) = j;
  Eigen::JacobiSVD<MatrixXd> svd(sq, Eigen::ComputeFullV);
  return svd.matrixV().col(j.cols() - 1);
}

// Tangent expressed in new bases, with the ambient directions carried over.
VectorXd transport(const VectorXd& tau, const std::vector<Mat>& from, const std::vector<Mat>& to, int n) {
  VectorXd out(tau.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto off = static_cast<Eigen::Index>(i) * n;
    const Eigen::VectorXd amb = from[i] * tau.segment(off, n);
    out.segment(off, n) = to[i].transpose() * amb;
  }
  out(out.size() - 1) = tau(tau.size() - 1);
  return out;
}

// Tangent of the solution circle at fixed t: null direction of the deviation rows over the
// configuration columns.
VectorXd circle_tangent(const MatrixXd& j) { return kernel_vector(j.topRows(j.rows() - 1).leftCols(j.cols() - 1)); }

// Linear phase condition through x, orthogonal to the circle direction c.
Gauge phase_gauge(const Configuration& x, const std::vector<Mat>& bases, const VectorXd& c) {
  const int n = x.dim;
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < bases.size(); ++i) dirs.push_back(bases[i] * c.segment(static_cast<Eigen::Index>(i) * n, n));
  return [x, dirs](const Configuration& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) s += dirs[i].dot(y.u[i] - x.u[i]);
    return s;
  };
}

struct Branch {
  bool reached = false;
  Configuration x;
  double max_t = 0.0;
  std::vector<double> ts;
  int steps = 0;
  Status status = Status::stalled;
  std::string message;
};

// Jacobian of F(retract(base, delta), t) with respect to delta, evaluated at y = retract(base, delta).
MatrixXd jacobian_in_base(const System& sys, const Configuration& base, const std::vector<Mat>& bases,
                          const VectorXd& delta, const Configuration& y, double t, const System::Eval& at) {
  const int n = base.dim;
  const std::vector<Mat> yb = bases_of(y);
  const MatrixXd jy = sys.jacobian(y, yb, t, at);
  MatrixXd chain = MatrixXd::Zero(jy.cols(), jy.cols());
  for (std::size_t i = 0; i < base.u.size(); ++i) {
    const auto off = static_cast<Eigen::Index>(i) * n;
    const Eigen::VectorXd raw = base.u[i] + bases[i] * delta.segment(off, n);
    const Eigen::VectorXd yi = y.u[i];
    const MatrixXd proj = MatrixXd::Identity(n + 1, n + 1) - yi * yi.transpose();
    chain.block(off, off, n, n) = yb[i].transpose() * proj * bases[i] / raw.norm();
  }
  chain(chain.rows() - 1, chain.cols() - 1) = 1.0;
  return jy * chain;
}

// Newton corrector on [F; constraint . z - level]: chord steps with the base Jacobian first,
// then full Newton (Jacobian re-evaluated at each iterate) to get across kinks of F.
bool correct(const System& sys, const Configuration& base, const std::vector<Mat>& bases, const MatrixXd& j,
             const VectorXd& constraint, double level, VectorXd& z, double tol, int& iters, Configuration& out,
             System::Eval& eval) {
  const auto k = j.cols();
  auto residual = [&](const VectorXd& zz, Configuration& y, System::Eval& e) {
    y = retract(base, bases, zz.head(k - 1));
    e = sys.eval(y);
    VectorXd rhs(k);
    rhs.head(k - 1) = System::value(e, zz(k - 1));
    rhs(k - 1) = constraint.dot(zz) - level;
    return rhs;
  };
  auto done = [&](const VectorXd& rhs) { return rhs.head(k - 1).cwiseAbs().maxCoeff() < tol && std::abs(rhs(k - 1)) < 1e-12; };
  auto square = [&](const MatrixXd& jj) {
    MatrixXd a(k, k);
    a.topRows(jj.rows()) = jj;
    a.row(k - 1) = constraint.transpose();
    return a;
  };

  const VectorXd z0 = z;
  {
    const Eigen::FullPivLU<MatrixXd> lu(square(j));
    if (lu.rank() == k) {
      double prev = std::numeric_limits<double>::infinity();
      for (iters = 0; iters < 10; ++iters) {
        const VectorXd rhs = residual(z, out, eval);
        if (done(rhs)) return true;
        const VectorXd step = lu.solve(rhs);
        const double norm = step.norm();
        if (iters > 0 && norm > 0.5 * prev) break;
        prev = norm;
        z -= step;
      }
    }
  }
  z = z0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 8; ++it, ++iters) {
    const VectorXd rhs = residual(z, out, eval);
    if (done(rhs)) return true;
    const double norm = rhs.head(k - 1).norm();
    if (it > 0 && norm > 0.9 * prev) return false;
    prev = norm;
    const Eigen::FullPivLU<MatrixXd> lu(square(jacobian_in_base(sys, base, bases, z.head(k - 1), out, z(k - 1), eval)));
    if (lu.rank() < k) return false;
    z -= lu.solve(rhs);
  }
  return false;
}

Branch track(const MeasurePath& path, const Gauge& fixed, const Configuration& start) {
  const bool moving = !fixed;
  Gauge gauge = moving ? Gauge([](const Configuration&) { return 0.0; }) : fixed;
  const System sys(path, gauge);
  const int n = start.dim;
  Branch br;
  Configuration x = start;
  double t = 0.0;
  std::vector<Mat> bases = bases_of(x);
  System::Eval ev = sys.eval(x);
  MatrixXd j = sys.jacobian(x, bases, t, ev);
  const auto k = j.cols();
  auto rephase = [&]() {
    if (!moving) return;
    const VectorXd c = circle_tangent(j);
    gauge = phase_gauge(x, bases, c);
    ev.g = 0.0;
    j.row(j.rows() - 1).head(k - 1) = c.transpose();
    j(j.rows() - 1, k - 1) = 0.0;
  };
  rephase();

  // Pull the start onto the gauge slice at t = 0.
  {
    VectorXd z = VectorXd::Zero(k);
    VectorXd fix_t = VectorXd::Zero(k);
    fix_t(k - 1) = 1.0;
    int it = 0;
    Configuration y;
    System::Eval e2;
    if (!correct(sys, x, bases, j, fix_t, 0.0, z, path.corrector_tol, it, y, e2)) {
      br.status = Status::stalled;
      br.message = "start is not a regular solution of the initial measure";
      br.x = x;
      return br;
    }
    x = y;
    ev = e2;
    bases = bases_of(x);
    j = sys.jacobian(x, bases, t, ev);
    rephase();
  }

  VectorXd tau = kernel_vector(j);
  if (tau(k - 1) < 0.0) tau = -tau;
  double h = path.initial_step;
  br.ts.push_back(0.0);
  for (br.steps = 0; br.steps < path.max_steps; ++br.steps) {
    const bool landing = t + h * tau(k - 1) >= 1.0;
    const double step = landing ? (1.0 - t) / tau(k - 1) : h;
    VectorXd z = step * tau;
    z(k - 1) += t;
    VectorXd constraint = tau;
    double level = tau.dot(z);
    if (landing) {
      constraint = VectorXd::Zero(k);
      constraint(k - 1) = 1.0;
      level = 1.0;
    }
    int iters = 0;
    Configuration y;
    System::Eval e2;
    if (!correct(sys, x, bases, j, constraint, level, z, path.corrector_tol, iters, y, e2)) {
      h = 0.5 * std::min(h, std::abs(step));
      if (h < path.min_step) {
        br.status = Status::stalled;
        br.message = "step size underflow";
        break;
      }
      continue;
    }
    if (!delta_condition(y)) {
      br.x = y;
      br.status = Status::delta_violation;
      br.message = "branch ran into a collision of hyperplanes";
      break;
    }
    const double t_new = z(k - 1);
    const std::vector<Mat> new_bases = bases_of(y);
    const VectorXd carried = transport(tau, bases, new_bases, n);
    x = y;
    t = t_new;
    ev = e2;
    bases = new_bases;
    br.ts.push_back(t);
    br.max_t = std::max(br.max_t, t);
    if (landing || t >= 1.0 - 1e-14) {
      br.reached = true;
      br.status = Status::converged;
      break;
    }
    if (t < 0.0) {
      br.status = Status::stalled;
      br.message = "branch turned back to t = 0";
      break;
    }
    j = sys.jacobian(x, bases, t, ev);
    rephase();
    tau = kernel_vector(j);
    if (tau.dot(carried) < 0.0) tau = -tau;
    if (iters <= 2) h = std::min(1.6 * h, path.max_step);
  }
  if (br.steps >= path.max_steps) {
    br.status = Status::max_iter;
    br.message = "continuation step limit reached";
  }
  br.x = x;
  return br;
}

}  // namespace

SolveReport continue_path(const MeasurePath& path, const std::vector<Configuration>& starts, const Gauge& gauge,
                          double target) {
  if (path.start.dim != path.end.dim) throw InputError("continue_path: measures differ in dimension");
  if (starts.empty()) throw InputError("continue_path: no start solutions");
  for (const auto& s : starts) {
    if (s.dim != path.start.dim || s.count() != s.dim) throw InputError("continue_path: start has wrong shape");
    if (residual_from_masses(path.start.masses(s), path.start.total) >= 1e-8)
      throw InputError("continue_path: start is not a solution of the initial measure");
  }
  SolveReport rep;
  rep.method = "continuation";
  double max_t = 0.0;
  std::vector<Branch> branches(starts.size());
  const std::size_t batch = std::max<std::size_t>(1, worker_count());
  for (std::size_t first = 0; first < starts.size(); first += batch) {
    const std::size_t count = std::min(batch, starts.size() - first);
    parallel_for(count, [&](std::size_t j) { branches[first + j] = track(path, gauge, starts[first + j]); });
    for (std::size_t b = first; b < first + count; ++b) {
      const Branch& br = branches[b];
      max_t = std::max(max_t, br.max_t);
      rep.iterations += br.steps;
      if (!br.reached) continue;
      RefineOptions ro;
      ro.target = target;
      SolveReport polished = refine(path.end, br.x, ro);
      polished.iterations += rep.iterations;
      polished.path = br.ts;
      polished.method = "continuation";
      polished.message = "branch " + std::to_string(b) + " reached t = 1";
      if (polished.converged()) return polished;
      rep = polished;
      rep.message = "branch " + std::to_string(b) + " reached t = 1 but polishing failed: " + polished.message;
    }
  }
  const Branch* best = &branches.front();
  for (const auto& br : branches)
    if (br.max_t > best->max_t) best = &br;
  if (rep.config.count() == 0) {
    rep.config = best->x;
    rep.masses = path.end.masses(best->x);
    rep.residual = residual_from_masses(rep.masses, path.end.total);
  }
  rep.path = best->ts;
  rep.status = Status::exhausted;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", max_t);
  rep.message = "continuation exhausted, max t reached " + std::string(buf) +
                (rep.message.empty() ? "" : "; " + rep.message) + "; last branch: " + best->message;
  return rep;
}

Gauge default_gauge() {
  static const Vec g1 = make_vec({0.8, 0.6, 0.0, 0.0, 0.0});
  static const Vec g2 = make_vec({0.0, 0.0, 0.48, -0.36, 0.8});
  return [](const Configuration& c) {
    double s = 0.0;
    for (const Vec& u : c.u) s += g1.dot(u) * g2.dot(u);
    return s;
  };
}

SolveReport continue_path(const MeasurePath& path, const std::vector<Configuration>& starts, double target) {
  return continue_path(path, starts, Gauge{}, target);
}

}  // namespace equipart
