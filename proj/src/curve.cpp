#include "equipart/curve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>

namespace equipart {
namespace {

using cd = std::complex<double>;

// Roots of sum_k c[k] z^k after stripping negligible leading and trailing coefficients.
std::vector<cd> poly_roots(std::vector<cd> c) {
  double scale = 0.0;
  for (const cd& x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  const double eps = 1e-14 * scale;
  std::size_t lo = 0;
  while (lo < c.size() && std::abs(c[lo]) <= eps) ++lo;
  std::size_t hi = c.size();
  while (hi > lo && std::abs(c[hi - 1]) <= eps) --hi;
  if (hi - lo < 2) return {};
  std::vector<cd> p(c.begin() + static_cast<long>(lo), c.begin() + static_cast<long>(hi));
  const int deg = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int k = 0; k < deg; ++k) comp(0, k) = -p[deg - 1 - k] / p[deg];
  for (int k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");
  std::vector<cd> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

double gamma4_value(const Vec& u, double t) {
  return u(0) * std::cos(t) + u(1) * std::sin(t) + u(2) * std::cos(2 * t) + u(3) * std::sin(2 * t) + u(4);
}

double gamma4_slope(const Vec& u, double t) {
  return -u(0) * std::sin(t) + u(1) * std::cos(t) - 2 * u(2) * std::sin(2 * t) + 2 * u(3) * std::cos(2 * t);
}

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

MassVector masses_from_cuts(const Configuration& config, std::vector<double> cuts, double lo, double hi,
                            bool cyclic, Vec (*point)(double, int), int n) {
  MassVector m(static_cast<std::size_t>(config.cells()), 0.0);
  std::sort(cuts.begin(), cuts.end());
  if (cyclic) {
    if (cuts.empty()) {
      m[static_cast<std::size_t>(config.orthant_of(point(lo, n)))] += hi - lo;
      return m;
    }
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + (hi - lo);
      if (b <= a) continue;
      m[static_cast<std::size_t>(config.orthant_of(point(0.5 * (a + b), n)))] += b - a;
    }
    return m;
  }
  std::vector<double> pts{lo};
  for (double c : cuts)
    if (c > lo && c < hi) pts.push_back(c);
  pts.push_back(hi);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double a = pts[k], b = pts[k + 1];
    if (b <= a) continue;
    m[static_cast<std::size_t>(config.orthant_of(point(0.5 * (a + b), n)))] += b - a;
  }
  return m;
}

Vec gamma4_n(double t, int) { return gamma4(t); }

}  // namespace

Vec gamma4(double t) { return make_vec({std::cos(t), std::sin(t), std::cos(2 * t), std::sin(2 * t)}); }

Vec gamma4_derivative(double t) {
  return make_vec({-std::sin(t), std::cos(t), -2 * std::sin(2 * t), 2 * std::cos(2 * t)});
}

Vec moment_point(double t, int n) {
  Vec p(n);
  double x = t;
  for (int k = 0; k < n; ++k) {
    p(k) = x;
    x *= t;
  }
  return p;
}

Vec hyperplane_through(const std::vector<Vec>& points) {
  if (points.empty()) throw InputError("hyperplane_through: no points");
  const int n = static_cast<int>(points.front().size());
  if (static_cast<int>(points.size()) != n) throw InputError("hyperplane_through: need exactly n points in R^n");
  Eigen::MatrixXd a(n, n + 1);
  for (int i = 0; i < n; ++i) {
    if (points[i].size() != n) throw InputError("hyperplane_through: point dimension mismatch");
    a.row(i).head(n) = points[i].transpose();
    a(i, n) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= 1e-12 * s(0)) throw NumericalError("degenerate point set");
  Vec u = svd.matrixV().col(n);
  u /= u.norm();
  for (int k = 0; k <= n; ++k) {
    if (std::abs(u(k)) > 1e-12) {
      if (u(k) < 0) u = -u;
      break;
    }
  }
  return u;
}

std::vector<double> gamma4_intersections(const Vec& u) {
  if (u.size() != 5) throw InputError("gamma4_intersections: expected a vector in R^5");
  const cd i(0.0, 1.0);
  std::vector<cd> c{u(2) + i * u(3), u(0) + i * u(1), 2.0 * u(4), u(0) - i * u(1), u(2) - i * u(3)};
  double scale = 0.0;
  for (int k = 0; k < 4; ++k) scale = std::max(scale, std::abs(u(k)));
  if (scale < 1e-14 && std::abs(u(4)) < 1e-14) throw NumericalError("curve restriction vanishes identically");
  std::vector<double> out;
  for (const cd& z : poly_roots(c)) {
    if (std::abs(std::abs(z) - 1.0) >= 1e-8) continue;
    double t = std::arg(z);
    for (int it = 0; it < 3; ++it) {
      const double d = gamma4_slope(u, t);
      if (std::abs(d) < 1e-10) break;
      const double step = gamma4_value(u, t) / d;
      if (std::abs(step) > 1e-6) break;
      t -= step;
    }
    out.push_back(wrap(t));
  }
  std::sort(out.begin(), out.end());
  if (out.size() > 4) throw NumericalError("more than four intersections with a convex curve");
  return out;
}

std::vector<double> moment_intersections(const Vec& u, double lo, double hi) {
  const int n = static_cast<int>(u.size()) - 1;
  std::vector<cd> c(static_cast<std::size_t>(n + 1));
  c[0] = u(n);
  for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k)] = u(k - 1);
  std::vector<double> out;
  const double span = std::max({1.0, std::abs(lo), std::abs(hi)});
  for (const cd& z : poly_roots(c)) {
    if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z))) continue;
    double t = z.real();
    for (int it = 0; it < 3; ++it) {
      double f = 0.0, df = 0.0;
      for (int k = n; k >= 0; --k) {
        df = df * t + f;
        f = f * t + c[static_cast<std::size_t>(k)].real();
      }
      if (std::abs(df) < 1e-14) break;
      t -= f / df;
    }
    if (t >= lo - 1e-12 * span && t <= hi + 1e-12 * span) out.push_back(std::clamp(t, lo, hi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MassVector gamma4_arc_masses(const Configuration& config) {
  if (config.dim != 4) throw InputError("gamma4 measure needs a configuration in R^4");
  std::vector<double> cuts;
  for (const Vec& v : config.u) {
    const auto r = gamma4_intersections(v);
    cuts.insert(cuts.end(), r.begin(), r.end());
  }
  return masses_from_cuts(config, std::move(cuts), 0.0, kTwoPi, true, gamma4_n, 4);
}

MassVector moment_arc_masses(const Configuration& config, double lo, double hi) {
  std::vector<double> cuts;
  for (const Vec& v : config.u) {
    const auto r = moment_intersections(v, lo, hi);
    cuts.insert(cuts.end(), r.begin(), r.end());
  }
  return masses_from_cuts(config, std::move(cuts), lo, hi, false, moment_point, config.dim);
}

}  // namespace equipart
