#include "equipart/sigma.hpp"

#include "equipart/curve.hpp"
#include "equipart/graycode.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace equipart {
namespace {

constexpr double kStep = kPi / 8;

void check_transitions(const std::vector<int>& t) {
  if (t.size() != 16) throw InputError("transition sequence must have 16 entries");
  const gray::GrayCycle c = gray::from_transitions(4, t, 0);
  if (!gray::is_balanced(c).balanced) throw InputError("transition sequence is not balanced");
}

// Division point indices (j+1 mod 16) where each track flips.
std::array<std::array<int, 4>, 4> division_points(const std::vector<int>& t) {
  std::array<std::array<int, 4>, 4> d{};
  std::array<int, 4> fill{};
  for (int j = 0; j < 16; ++j) {
    const int track = t[static_cast<std::size_t>(j)];
    d[static_cast<std::size_t>(track)][static_cast<std::size_t>(fill[static_cast<std::size_t>(track)]++)] = (j + 1) % 16;
  }
  return d;
}

Eigen::MatrixXd point_matrix(double phase, const std::array<int, 4>& idx, bool derivative) {
  Eigen::MatrixXd m(4, 5);
  for (int k = 0; k < 4; ++k) {
    const double t = phase + idx[static_cast<std::size_t>(k)] * kStep;
    m.row(k).head(4) = (derivative ? gamma4_derivative(t) : gamma4(t)).transpose();
    m(k, 4) = derivative ? 0.0 : 1.0;
  }
  return m;
}

Vec oriented_plane(double phase, const std::array<int, 4>& idx) {
  std::vector<Vec> pts;
  for (int k : idx) pts.push_back(gamma4(phase + k * kStep));
  Vec u = hyperplane_through(pts);
  Vec mid(5);
  mid.head(4) = gamma4(phase + 0.5 * kStep);
  mid(4) = 1.0;
  if (u.dot(mid) < 0) u = -u;
  return u;
}

}  // namespace

Measure gamma4_measure() { return Measure(CurveMeasure{}); }

Measure gamma4_tube(int beads, double sigma) {
  if (beads < 4 || !(sigma > 0.0)) throw InputError("gamma4_tube: need at least 4 beads and positive width");
  GaussianMixture g;
  g.dim = 4;
  for (int k = 0; k < beads; ++k) {
    g.weights.push_back(kTwoPi / beads);
    g.means.push_back(gamma4(kTwoPi * (k + 0.5) / beads));
    g.factors.push_back(sigma * Mat::Identity(4, 4));
  }
  return Measure(std::move(g));
}

std::vector<int> canonical_transitions() { return gray::transitions(gray::canonical_balanced_code()); }

Configuration sigma_loop_config(double phase, const std::vector<int>& transitions) {
  check_transitions(transitions);
  const auto d = division_points(transitions);
  std::vector<Vec> u;
  for (int i = 0; i < 4; ++i) u.push_back(oriented_plane(phase, d[static_cast<std::size_t>(i)]));
  return Configuration(4, std::move(u));
}

std::vector<Vec> sigma_loop_derivative(double phase, const std::vector<int>& transitions) {
  const Configuration c = sigma_loop_config(phase, transitions);
  const auto d = division_points(transitions);
  std::vector<Vec> out;
  for (int i = 0; i < 4; ++i) {
    const auto& idx = d[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd m = point_matrix(phase, idx, false);
    const Eigen::MatrixXd dm = point_matrix(phase, idx, true);
    const Eigen::VectorXd rhs = -(dm * Eigen::VectorXd(c.u[static_cast<std::size_t>(i)]));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.push_back(svd.solve(rhs));
  }
  return out;
}

SolutionPoint sigma_theta_config(double phase, const std::vector<int>& transitions, const GroupElement& g) {
  if (!(phase >= 0.0 && phase < kStep)) throw InputError("phase must lie in [0, pi/8)");
  g.validate();
  if (g.size() != 4) throw InputError("group element must act on four hyperplanes");
  SolutionPoint sp;
  sp.phase = phase;
  sp.transitions = transitions;
  sp.division = division_points(transitions);
  sp.g = g;
  sp.config = act(g, sigma_loop_config(phase, transitions));
  if (!delta_condition(sp.config)) throw NumericalError("constructed configuration violates the delta condition");
  return sp;
}

SolutionPoint sigma_theta_config(double phase) {
  return sigma_theta_config(phase, canonical_transitions(), GroupElement::identity(4));
}

std::vector<unsigned> arc_labels(const Configuration& config, double phase) {
  std::vector<unsigned> out;
  for (int j = 0; j < 16; ++j) out.push_back(static_cast<unsigned>(config.orthant_of(gamma4(phase + (j + 0.5) * kStep))));
  return out;
}

Transversality transversality_check(const SolutionPoint& sp) {
  const Configuration& base = sp.config;
  const MassVector m0 = gamma4_arc_masses(base);
  if (residual_from_masses(m0, kTwoPi) > 1e-8) throw NumericalError("degenerate solution: residual above 1e-8");
  constexpr double h = 1e-6;
  Eigen::MatrixXd jac(16, 16);
  std::vector<Mat> bases;
  for (int i = 0; i < 4; ++i) bases.push_back(tangent_basis(base.u[static_cast<std::size_t>(i)]));
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      Configuration plus = base, minus = base;
      const Vec dir = bases[static_cast<std::size_t>(i)].col(k);
      plus.u[static_cast<std::size_t>(i)] = (base.u[static_cast<std::size_t>(i)] + h * dir).normalized();
      minus.u[static_cast<std::size_t>(i)] = (base.u[static_cast<std::size_t>(i)] - h * dir).normalized();
      const MassVector mp = gamma4_arc_masses(plus), mm = gamma4_arc_masses(minus);
      for (int b = 0; b < 16; ++b) jac(b, 4 * i + k) = (mp[static_cast<std::size_t>(b)] - mm[static_cast<std::size_t>(b)]) / (2 * h);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Transversality t;
  for (int k = 0; k < s.size(); ++k) t.singular_values.push_back(s(k));
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > 1e-6 * s(0)) ++t.rank;
  t.smallest = s(14);
  t.kernel = s(15);

  // Phase direction expressed in the same tangent coordinates.
  const auto dloop = sigma_loop_derivative(sp.phase, sp.transitions);
  Configuration dconf;
  dconf.dim = 4;
  dconf.u = dloop;
  const Configuration dphi = act(sp.g, dconf);
  Eigen::VectorXd tangent(16);
  for (int i = 0; i < 4; ++i)
    tangent.segment(4 * i, 4) = bases[static_cast<std::size_t>(i)].transpose() * Eigen::VectorXd(dphi.u[static_cast<std::size_t>(i)]);
  const Eigen::VectorXd kv = svd.matrixV().col(15);
  t.alignment = std::abs(kv.dot(tangent)) / (kv.norm() * tangent.norm());
  return t;
}

ArcBound arc_count_bound(int n) {
  if (n < 1) throw InputError("arc_count_bound: n must be positive");
  if (n > 62) throw InputError("arc_count_bound: n too large");
  ArcBound b;
  b.arcs = static_cast<long long>(n) * n;
  b.cells = 1LL << n;
  b.feasible = b.arcs >= b.cells;
  return b;
}

}  // namespace equipart
