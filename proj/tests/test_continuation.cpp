#include "doctest.h"
#include "support.hpp"

#include "equipart/curve.hpp"
#include "equipart/sigma.hpp"
#include "equipart/solver.hpp"

#include <algorithm>
#include <cmath>

using namespace equipart;

namespace {

Mat rotation12(double angle) {
  Mat r = Mat::Identity(4, 4);
  r(0, 0) = r(1, 1) = std::cos(angle);
  r(0, 1) = -std::sin(angle);
  r(1, 0) = std::sin(angle);
  return r;
}

// A configuration belongs to the solution set of the curve measure iff it equipartitions it
// and its sixteen intersection parameters are equally spaced by pi/8.
double sigma_defect(const Configuration& c) {
  std::vector<double> roots;
  for (const Vec& u : c.u) {
    const auto r = gamma4_intersections(u);
    if (r.size() != 4) return 1.0;
    roots.insert(roots.end(), r.begin(), r.end());
  }
  std::sort(roots.begin(), roots.end());
  double worst = residual(gamma4_measure(), c);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double next = k + 1 < roots.size() ? roots[k + 1] : roots[0] + kTwoPi;
    worst = std::max(worst, std::abs(next - roots[k] - kPi / 8));
  }
  return worst;
}

Configuration pull_back(const Configuration& c, const Mat& linear) {
  const AffineFrame frame{linear, Vec::Zero(4)};
  return frame.to_local(c);
}

double orbit_distance(const Configuration& a, const Configuration& b) {
  double best = 1e300;
  for (const GroupElement& g : all_group_elements(4)) best = std::min(best, config_distance(act(g, a), b));
  return best;
}

}  // namespace

TEST_CASE("constant path returns a solution at t = 1") {
  const MassOracle curve = make_oracle(gamma4_measure());
  const SolutionPoint sp = sigma_theta_config(0.04);
  const SolveReport r = continue_path(MeasurePath{curve, curve}, {sp.config});
  REQUIRE(r.converged());
  CHECK(sigma_defect(r.config) < 1e-8);
  REQUIRE_FALSE(r.path.empty());
  CHECK(r.path.back() == doctest::Approx(1.0));
}

TEST_CASE("rotating the tube in the plane orthogonal to the mirror") {
  const double angle = 0.4;
  const Measure tube = gamma4_tube();
  const Measure turned = transform(tube, rotation12(angle), Vec::Zero(4));
  const SolveReport start = refine(tube, sigma_theta_config(0.04).config, 1e-12, 100);
  REQUIRE(start.converged());
  const SolveReport r = continue_path(MeasurePath{make_oracle(tube), make_oracle(turned)}, {start.config}, 1e-12);
  REQUIRE(r.converged());
  CHECK(residual(turned, r.config) < 1e-11);
  CHECK(residual(tube, pull_back(r.config, rotation12(angle))) < 1e-10);
}

TEST_CASE("tracking forth and back returns to the start orbit") {
  const MassOracle a = make_oracle(gamma4_measure()), b = make_oracle(gamma4_tube(64, 0.1));
  const Gauge gauge = default_gauge();
  // Start on a zero of the gauge so that both directions solve the same system.
  const auto tr = canonical_transitions();
  double lo = 0.0, hi = 0.0;
  for (int k = 1; k <= 96; ++k) {
    hi = kPi * k / 96;
    if ((gauge(sigma_loop_config(lo, tr)) < 0) != (gauge(sigma_loop_config(hi, tr)) < 0)) break;
    lo = hi;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((gauge(sigma_loop_config(lo, tr)) < 0) == (gauge(sigma_loop_config(mid, tr)) < 0) ? lo : hi) = mid;
  }
  const Configuration start = sigma_loop_config(0.5 * (lo + hi), tr);
  const SolveReport forth = continue_path(MeasurePath{a, b}, {start}, gauge, 1e-12);
  REQUIRE(forth.converged());
  CHECK(std::abs(gauge(forth.config)) < 1e-8);
  const SolveReport back = continue_path(MeasurePath{b, a}, {forth.config}, gauge, 1e-12);
  REQUIRE(back.converged());
  CHECK(orbit_distance(back.config, start) < 1e-4);
}

TEST_CASE("the gauge is invariant under the group and odd under the mirror") {
  std::mt19937_64 rng(81);
  const Gauge gauge = default_gauge();
  const Configuration c = testing::random_config(rng, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupElement g = testing::random_group_element(rng, 4);
    CHECK(std::abs(gauge(act(g, c)) - gauge(c)) < 1e-14);
  }
  Configuration m = c;
  for (Vec& u : m.u) {
    u(0) = -u(0);
    u(1) = -u(1);
  }
  CHECK(std::abs(gauge(m) + gauge(c)) < 1e-14);
}

TEST_CASE("symmetric pipeline on the curve measure itself") {
  const Subspace plane{Vec::Zero(4), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const SolveReport r = solve_4d_symmetric(gamma4_measure(), plane);
  REQUIRE(r.converged());
  CHECK(sigma_defect(r.config) < 1e-6);
}

TEST_CASE("mirrored pair of gaussians plus one on the plane") {
  GaussianMixture g;
  g.dim = 4;
  g.weights = {1.0, 1.0, 0.8};
  g.means = {make_vec({1, 0, 0, 0}), make_vec({-1, 0, 0, 0}), make_vec({0, 0, 0.5, -0.3})};
  Mat f = 0.6 * Mat::Identity(4, 4);
  g.factors = {f, f, f};
  const Measure m(g);
  const Subspace plane{Vec::Zero(4), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const SolveReport r = solve_4d_symmetric(m, plane);
  REQUIRE(r.converged());
  CHECK(residual(m, r.config) < 1e-6);
  CHECK_FALSE(r.path.empty());
}

TEST_CASE("a centred product gaussian agrees with the centre solver") {
  const Vec o = make_vec({0.2, 0.1, -0.3, 0.4});
  const Measure m = make_gaussian(o, 0.8);
  const Subspace plane{o, {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  const SolveReport a = solve_4d_symmetric(m, plane);
  const SolveReport b = solve_4d_center(m, o);
  REQUIRE(a.converged());
  REQUIRE(b.converged());
  CHECK(residual(m, a.config) < 1e-6);
  CHECK(residual(m, b.config) < 1e-6);
}

TEST_CASE("asymmetric input is rejected before any solving") {
  const Subspace plane{Vec::Zero(4), {make_vec({0, 0, 1, 0}), make_vec({0, 0, 0, 1})}};
  CHECK_THROWS_AS(solve_4d_symmetric(make_gaussian(make_vec({1, 0, 0, 0}), 0.5), plane), InputError);
  const Subspace bad{Vec::Zero(4), {make_vec({0, 0, 1, 0})}};
  CHECK_THROWS_AS(solve_4d_symmetric(make_gaussian(Vec::Zero(4), 0.5), bad), InputError);
}

TEST_CASE("symmetry defect of symmetrised measures") {
  std::mt19937_64 rng(82);
  const AffineReflection r = AffineReflection::through(make_vec({0.1, 0, 0, 0}), {make_vec({0, 0, 1, 0}), make_vec({0, 1, 0, 1})});
  const Measure raw = testing::random_mixture(rng, 4, 3);
  CHECK(symmetry_defect(make_oracle(symmetrize(raw, r)), r) < 1e-10);
  CHECK(symmetry_defect(make_oracle(raw), r) > 1e-4);
}
