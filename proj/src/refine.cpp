#include "equipart/solver.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace equipart {
namespace {

Eigen::VectorXd scaled_deviation(const MassVector& m, double total) {
  const double share = total / static_cast<double>(m.size());
  Eigen::VectorXd r(static_cast<Eigen::Index>(m.size()));
  for (std::size_t k = 0; k < m.size(); ++k) r(static_cast<Eigen::Index>(k)) = (m[k] - share) / total;
  return r;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::stalled: return "stalled";
    case Status::delta_violation: return "delta-violation";
    case Status::max_iter: return "max-iter";
    case Status::exhausted: return "exhausted";
  }
  return "unknown";
}

SolveReport refine(const MassOracle& oracle, const Configuration& start, const RefineOptions& options) {
  if (start.dim != oracle.dim) throw InputError("refine: configuration and measure dimensions differ");
  const int m = start.count();
  std::vector<int> free;
  for (int i = 0; i < m; ++i)
    if (options.frozen.empty() || !options.frozen[static_cast<std::size_t>(i)]) free.push_back(i);
  const int n = oracle.dim;
  const int k = static_cast<int>(free.size()) * n;
  const double target = std::max(options.target, oracle.residual_floor());

  SolveReport rep;
  rep.method = "refine";
  rep.config = start;
  rep.masses = oracle.masses(start);
  Eigen::VectorXd r = scaled_deviation(rep.masses, oracle.total);
  rep.residual = r.cwiseAbs().maxCoeff();
  if (!delta_condition(start, options.delta_tol)) {
    rep.status = Status::delta_violation;
    rep.message = "hyperplanes collide: lines of normals closer than delta";
    return rep;
  }
  if (rep.residual < target) {
    rep.status = Status::converged;
    return rep;
  }
  if (k == 0) {
    rep.status = Status::stalled;
    rep.message = "no free hyperplanes";
    return rep;
  }

  Configuration x = start;
  double lambda = 1e-4;
  // Atomic masses are piecewise constant; difference across roughly one atom spacing.
  const double h = std::max(options.fd_step, std::pow(oracle.residual_floor(), 1.0 / n));
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    std::vector<Mat> bases;
    for (int i : free) bases.push_back(tangent_basis(x.u[static_cast<std::size_t>(i)]));
    Eigen::MatrixXd jac(r.size(), k);
    for (std::size_t f = 0; f < free.size(); ++f) {
      const auto i = static_cast<std::size_t>(free[f]);
      for (int d = 0; d < n; ++d) {
        Configuration xp = x, xm = x;
        const Vec dir = bases[f].col(d);
        xp.u[i] = (x.u[i] + h * dir).normalized();
        xm.u[i] = (x.u[i] - h * dir).normalized();
        jac.col(static_cast<Eigen::Index>(f) * n + d) =
            (scaled_deviation(oracle.masses(xp), oracle.total) - scaled_deviation(oracle.masses(xm), oracle.total)) / (2 * h);
      }
    }
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    const double scale = std::max(a.diagonal().maxCoeff(), 1e-300);
    bool accepted = false;
    double step_norm = 0.0;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += lambda * scale;
      const Eigen::VectorXd delta = -damped.ldlt().solve(g);
      Configuration trial = x;
      for (std::size_t f = 0; f < free.size(); ++f) {
        const auto i = static_cast<std::size_t>(free[f]);
        trial.u[i] = (x.u[i] + bases[f] * delta.segment(static_cast<Eigen::Index>(f) * n, n)).normalized();
      }
      const MassVector tm = oracle.masses(trial);
      const Eigen::VectorXd tr = scaled_deviation(tm, oracle.total);
      if (tr.squaredNorm() < r.squaredNorm()) {
        x = trial;
        r = tr;
        rep.masses = tm;
        step_norm = delta.norm();
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    rep.iterations = iter;
    rep.config = x;
    rep.residual = r.cwiseAbs().maxCoeff();
    if (!accepted) {
      rep.status = Status::stalled;
      rep.message = "no descent step found";
      return rep;
    }
    if (!delta_condition(x, options.delta_tol)) {
      rep.status = Status::delta_violation;
      rep.message = "hyperplanes collided during refinement";
      return rep;
    }
    if (rep.residual < target) {
      rep.status = Status::converged;
      return rep;
    }
    if (step_norm < 1e-14) {
      rep.status = Status::stalled;
      rep.message = "step below 1e-14";
      return rep;
    }
  }
  rep.status = Status::max_iter;
  rep.message = "iteration limit reached";
  return rep;
}

SolveReport refine(const Measure& measure, const Configuration& start, double target, int max_iter) {
  RefineOptions o;
  o.target = target;
  o.max_iter = max_iter;
  return refine(make_oracle(measure), start, o);
}

}  // namespace equipart
