#include "equipart/oracle.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace equipart {
namespace {

std::atomic<unsigned> g_workers{0};

Configuration single(int dim, const Vec& a, double c) {
  Vec u(dim + 1);
  u.head(dim) = a;
  u(dim) = -c;
  Configuration cfg;
  cfg.dim = dim;
  cfg.u = {u / u.norm()};
  return cfg;
}

// Weighted median of the projections; plateau midpoint when a prefix holds exactly half.
double atomic_halving(const Measure& m, const Vec& a) {
  const auto& xs = m.atoms();
  const auto& ws = m.atom_weights();
  std::vector<std::pair<double, double>> proj(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) proj[i] = {a.dot(xs[i]), ws[i]};
  std::sort(proj.begin(), proj.end(), [](const auto& p, const auto& q) { return p.first > q.first; });
  const double half = 0.5 * m.total();
  const double tol = 1e-12 * m.total();
  double acc = 0.0;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    acc += proj[i].second;
    // Equal projections must stay on the same side.
    if (i + 1 < proj.size() && proj[i + 1].first == proj[i].first) continue;
    if (std::abs(acc - half) <= tol && i + 1 < proj.size()) return 0.5 * (proj[i].first + proj[i + 1].first);
    if (acc >= half - tol) return proj[i].first;
  }
  return proj.back().first;
}

}  // namespace

MassOracle make_oracle(const Measure& measure) {
  MassOracle o;
  o.dim = measure.dim();
  o.total = measure.total();
  o.granularity = measure.max_atom();
  o.center = centroid(measure);
  o.scale = std::max(rms_radius(measure, o.center), 1e-12);
  o.masses = [measure](const Configuration& c) { return orthant_masses(measure, c); };
  if (measure.is_atomic()) o.halving = [measure](const Vec& a) { return atomic_halving(measure, a); };
  return o;
}

MassOracle blend(const MassOracle& a, const MassOracle& b, double t) {
  if (a.dim != b.dim) throw InputError("blend: dimensions differ");
  MassOracle o;
  o.dim = a.dim;
  o.total = 1.0;
  o.granularity = std::max((1.0 - t) * a.granularity / a.total, t * b.granularity / b.total);
  o.center = (1.0 - t) * a.center + t * b.center;
  o.scale = std::max(a.scale, b.scale) + ((a.center - b.center).norm());
  o.masses = [a, b, t](const Configuration& c) {
    MassVector out(static_cast<std::size_t>(c.cells()), 0.0);
    if (t < 1.0) {
      const MassVector ma = a.masses(c);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += (1.0 - t) * ma[k] / a.total;
    }
    if (t > 0.0) {
      const MassVector mb = b.masses(c);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += t * mb[k] / b.total;
    }
    return out;
  };
  if (t == 0.0 && a.halving) o.halving = a.halving;
  if (t == 1.0 && b.halving) o.halving = b.halving;
  return o;
}

Vec AffineFrame::to_world(const Vec& uy) const {
  const int n = dim();
  const Eigen::VectorXd ay = uy.head(n);
  const Eigen::VectorXd ax = linear.transpose().fullPivLu().solve(ay);
  Vec ux(n + 1);
  ux.head(n) = ax;
  ux(n) = uy(n) - ax.dot(offset);
  return ux / ux.norm();
}

Vec AffineFrame::to_local(const Vec& ux) const {
  const int n = dim();
  const Eigen::VectorXd ax = ux.head(n);
  Vec uy(n + 1);
  uy.head(n) = linear.transpose() * ax;
  uy(n) = ux(n) + ax.dot(offset);
  return uy / uy.norm();
}

Configuration AffineFrame::to_world(const Configuration& cy) const {
  Configuration c;
  c.dim = cy.dim;
  for (const Vec& u : cy.u) c.u.push_back(to_world(u));
  return c;
}

Configuration AffineFrame::to_local(const Configuration& cx) const {
  Configuration c;
  c.dim = cx.dim;
  for (const Vec& u : cx.u) c.u.push_back(to_local(u));
  return c;
}

MassOracle in_frame(const MassOracle& world, const AffineFrame& frame) {
  if (frame.dim() != world.dim) throw InputError("in_frame: dimension mismatch");
  MassOracle o;
  o.dim = world.dim;
  o.total = world.total;
  o.granularity = world.granularity;
  const Eigen::MatrixXd inv = frame.linear.inverse();
  o.center = inv * Eigen::VectorXd(world.center - frame.offset);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(inv);
  o.scale = world.scale * svd.singularValues()(0);
  o.masses = [world, frame](const Configuration& cy) { return world.masses(frame.to_world(cy)); };
  if (world.halving) {
    o.halving = [world, frame](const Vec& ay) {
      const Eigen::VectorXd nx = frame.linear.transpose().fullPivLu().solve(Eigen::VectorXd(ay));
      const double k = nx.norm();
      const Vec dir = nx / k;
      return k * world.halving(dir) - nx.dot(frame.offset);
    };
  }
  return o;
}

double halving_offset(const MassOracle& oracle, const Vec& a) {
  if (oracle.halving) return oracle.halving(a);
  const int n = oracle.dim;
  const double half = 0.5 * oracle.total;
  auto upper = [&](double c) { return oracle.masses(single(n, a, c))[0]; };
  const double c0 = a.dot(oracle.center);
  double step = oracle.scale;
  double lo = c0 - step, hi = c0 + step;
  for (int k = 0; k < 80 && upper(lo) < half; ++k) lo -= (step *= 2.0);
  step = oracle.scale;
  for (int k = 0; k < 80 && upper(hi) > half; ++k) hi += (step *= 2.0);
  if (oracle.granularity == 0.0) {
    // Continuous: upper(c) - half is monotone, bracketed root.
    boost::uintmax_t iters = 200;
    auto f = [&](double c) { return upper(c) - half; };
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo < 0.0 || fhi > 0.0) throw NumericalError("halving: could not bracket the median");
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                      boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  }
  // Atoms: locate both ends of the level set {upper = half} and take its midpoint.
  const double tol = 1e-12 * oracle.total;
  auto boundary = [&](double level) {
    double a0 = lo, b0 = hi;  // upper(a0) > level >= upper(b0) roughly
    for (int k = 0; k < 200 && b0 - a0 > 1e-15 * std::max(1.0, std::abs(a0) + std::abs(b0)); ++k) {
      const double m = 0.5 * (a0 + b0);
      (upper(m) > level ? a0 : b0) = m;
    }
    return 0.5 * (a0 + b0);
  };
  const double ca = boundary(half + tol);
  const double cb = boundary(half - tol);
  return 0.5 * (ca + cb);
}

void set_worker_count(unsigned n) { g_workers = n; }

unsigned worker_count() {
  const unsigned n = g_workers.load();
  if (n > 0) return n;
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace equipart
