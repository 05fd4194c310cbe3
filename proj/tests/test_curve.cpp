#include "doctest.h"
#include "support.hpp"

#include "equipart/curve.hpp"

#include <algorithm>
#include <cmath>

using namespace equipart;

namespace {

double curve_value(const Vec& u, double t) {
  const Vec p = gamma4(t);
  return u.head(4).dot(p) + u(4);
}

// Sign changes of the restriction on a uniform grid: a lower bound on the simple root count.
int scan_sign_changes(const Vec& u, int samples) {
  int changes = 0;
  double prev = curve_value(u, 0.0);
  for (int k = 1; k <= samples; ++k) {
    const double v = curve_value(u, kTwoPi * k / samples);
    if ((v < 0) != (prev < 0)) ++changes;
    prev = v;
  }
  return changes;
}

// Orthant masses of dt along gamma4 by midpoint sampling.
std::vector<double> sampled_masses(const Configuration& c, int samples) {
  std::vector<double> m(16, 0.0);
  for (int k = 0; k < samples; ++k) m[c.orthant_of(gamma4(kTwoPi * (k + 0.5) / samples))] += kTwoPi / samples;
  return m;
}

}  // namespace

TEST_CASE("hyperplane through quarter points is x4 = 0") {
  const Vec u = hyperplane_through({gamma4(0), gamma4(kPi / 2), gamma4(kPi), gamma4(3 * kPi / 2)});
  CHECK((u.cwiseAbs() - make_vec({0, 0, 0, 1, 0})).norm() < 1e-12);
}

TEST_CASE("hyperplane through a repeated point is degenerate") {
  CHECK_THROWS_AS(hyperplane_through({gamma4(0.1), gamma4(0.1), gamma4(1.0), gamma4(2.0)}), NumericalError);
}

TEST_CASE("hyperplane through random curve points") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> ts(4);
    for (double& x : ts) x = t(rng);
    std::sort(ts.begin(), ts.end());
    if (ts[1] - ts[0] < 1e-3 || ts[2] - ts[1] < 1e-3 || ts[3] - ts[2] < 1e-3) continue;
    std::vector<Vec> pts;
    for (double x : ts) pts.push_back(gamma4(x));
    const Vec u = hyperplane_through(pts);
    CHECK(std::abs(u.norm() - 1.0) < 1e-14);
    for (const Vec& p : pts) CHECK(std::abs(u.head(4).dot(p) + u(4)) < 1e-12);
  }
}

TEST_CASE("intersections with coordinate hyperplanes") {
  auto near = [](const std::vector<double>& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
  };
  near(gamma4_intersections(make_vec({0, 0, 0, 1, 0})), {0, kPi / 2, kPi, 3 * kPi / 2});
  near(gamma4_intersections(make_vec({0, 0, 1, 0, 0})), {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4});
  CHECK(gamma4_intersections(make_vec({1, 0, 0, 0, -2}) / std::sqrt(5.0)).empty());
  CHECK(gamma4_intersections(make_vec({0, 0, 0, 0, 1})).empty());
  CHECK_THROWS_AS(gamma4_intersections(make_vec({0, 0, 0, 0, 0})), NumericalError);
}

TEST_CASE("convexity: at most four intersections, each a genuine root") {
  std::mt19937_64 rng(22);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec u = testing::random_unit(rng, 5);
    const auto roots = gamma4_intersections(u);
    if (roots.size() > 4) ++violations;
    for (double r : roots) CHECK(std::abs(curve_value(u, r)) < 1e-8);
    CHECK(static_cast<int>(roots.size()) >= scan_sign_changes(u, 4096));
  }
  CHECK(violations == 0);
}

TEST_CASE("moment curve intersections are roots of the polynomial") {
  // u . (t, t^2, t^3, 1) = 0 with roots 0.2, 0.5, 0.9: (t - 0.2)(t - 0.5)(t - 0.9).
  const Vec u = make_vec({0.73, -1.6, 1.0, -0.09});
  const auto roots = moment_intersections(u / u.norm(), 0.0, 1.0);
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(roots[0] - 0.2) < 1e-10);
  CHECK(std::abs(roots[1] - 0.5) < 1e-10);
  CHECK(std::abs(roots[2] - 0.9) < 1e-10);
  CHECK(moment_intersections(u / u.norm(), 0.3, 0.8).size() == 1);
}

TEST_CASE("exact arc masses agree with sampling") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration c = testing::random_config(rng, 4);
    const auto exact = gamma4_arc_masses(c);
    const auto sampled = sampled_masses(c, 1 << 18);
    CHECK(testing::max_abs_diff(exact, sampled) < 4 * kTwoPi / (1 << 18) * 4);
    double sum = 0.0;
    for (double m : exact) sum += m;
    CHECK(std::abs(sum - kTwoPi) < 1e-12);
  }
}

TEST_CASE("moment arc masses agree with sampling") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration c = testing::random_config(rng, 3);
    const auto exact = moment_arc_masses(c, -1.0, 1.0);
    std::vector<double> sampled(8, 0.0);
    const int n = 1 << 18;
    for (int k = 0; k < n; ++k) sampled[c.orthant_of(moment_point(-1.0 + 2.0 * (k + 0.5) / n, 3))] += 2.0 / n;
    CHECK(testing::max_abs_diff(exact, sampled) < 1e-4);
  }
}

TEST_CASE("derivative matches finite differences") {
  for (double t : {0.0, 0.7, 2.5, 5.9}) {
    const Vec fd = (gamma4(t + 1e-6) - gamma4(t - 1e-6)) / 2e-6;
    CHECK((fd - gamma4_derivative(t)).norm() < 1e-8);
  }
}
