#include "doctest.h"
#include "support.hpp"

#include "equipart/curve.hpp"
#include "equipart/graycode.hpp"
#include "equipart/sigma.hpp"

#include <algorithm>
#include <cmath>

using namespace equipart;

namespace {

// Independent residual: arc lengths between sorted roots of every hyperplane, labelled by
// evaluating all four signs at the arc midpoint.
double arc_residual(const Configuration& c) {
  std::vector<double> cuts;
  for (const Vec& u : c.u)
    for (int k = 0; k < 4096; ++k) {
      const double a = kTwoPi * k / 4096, b = kTwoPi * (k + 1) / 4096;
      auto f = [&](double t) { return u.head(4).dot(gamma4(t)) + u(4); };
      if ((f(a) < 0) != (f(b) < 0)) {
        double lo = a, hi = b;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((f(mid) < 0) == (f(lo) < 0)) lo = mid; else hi = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
      }
    }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> m(16, 0.0);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double a = cuts[k], b = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + kTwoPi;
    m[c.orthant_of(gamma4(0.5 * (a + b)))] += b - a;
  }
  double worst = 0.0;
  for (double x : m) worst = std::max(worst, std::abs(x - kTwoPi / 16));
  return worst / kTwoPi;
}

}  // namespace

TEST_CASE("solution points at sampled phases") {
  for (int k = 0; k < 8; ++k) {
    const double phase = (k + 0.3) * kPi / 64;
    const SolutionPoint sp = sigma_theta_config(phase);
    CHECK(residual(gamma4_measure(), sp.config) < 1e-10);
    CHECK(arc_residual(sp.config) < 1e-10);
    CHECK(delta_condition(sp.config));
    // Each hyperplane meets the curve exactly in its own four division points.
    for (int i = 0; i < 4; ++i) {
      const auto roots = gamma4_intersections(sp.config.u[static_cast<std::size_t>(i)]);
      REQUIRE(roots.size() == 4);
      std::vector<double> want;
      for (int j : sp.division[static_cast<std::size_t>(i)]) want.push_back(std::fmod(phase + j * kPi / 8, kTwoPi));
      std::sort(want.begin(), want.end());
      for (std::size_t r = 0; r < 4; ++r) CHECK(std::abs(roots[r] - want[r]) < 1e-9);
    }
  }
}

TEST_CASE("phase outside the fundamental interval is rejected") {
  CHECK_THROWS_AS(sigma_theta_config(kPi / 8), InputError);
  CHECK_THROWS_AS(sigma_theta_config(-0.01), InputError);
}

TEST_CASE("arc labels read along the curve are the balanced code") {
  const SolutionPoint sp = sigma_theta_config(0.07);
  const auto labels = arc_labels(sp.config, sp.phase);
  gray::GrayCycle c{4, labels};
  REQUIRE(gray::is_valid(c));
  CHECK(gray::is_balanced(c).balanced);
  CHECK(gray::canonical_form(c, gray::SymmetryGroupSpec::full()) == gray::canonical_balanced_code());
  CHECK(labels.front() == 0);
}

TEST_CASE("group images are solutions and pairwise distinct") {
  const auto group = all_group_elements(4);
  std::vector<Configuration> images;
  for (const GroupElement& g : group) {
    const SolutionPoint sp = sigma_theta_config(0.11, canonical_transitions(), g);
    CHECK(residual(gamma4_measure(), sp.config) < 1e-10);
    images.push_back(sp.config);
  }
  double closest = 1e300;
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b) closest = std::min(closest, config_distance(images[a], images[b]));
  CHECK(closest > 1e-3);
}

TEST_CASE("transversality: rank fifteen with the phase direction as kernel") {
  std::mt19937_64 rng(51);
  const auto group = all_group_elements(4);
  for (int k = 0; k < 4; ++k) {
    const GroupElement& g = group[rng() % group.size()];
    const SolutionPoint sp = sigma_theta_config((k + 0.5) * kPi / 32, canonical_transitions(), g);
    const Transversality t = transversality_check(sp);
    CHECK(t.rank == 15);
    CHECK(t.kernel < 1e-6 * t.singular_values.front());
    CHECK(t.alignment > 0.999);
  }
  const Transversality a = transversality_check(sigma_theta_config(0.1));
  const Transversality b = transversality_check(sigma_theta_config(0.1, canonical_transitions(), group[200]));
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(a.singular_values[k] - b.singular_values[k]) < 1e-6);
}

TEST_CASE("non-solutions are rejected by the transversality check") {
  SolutionPoint sp = sigma_theta_config(0.1);
  sp.config.u[0] = (sp.config.u[0] + 0.05 * make_vec({1, 0, 0, 0, 0})).normalized();
  CHECK_THROWS_AS(transversality_check(sp), NumericalError);
}

TEST_CASE("advancing the phase by one step rotates the code by one step") {
  const auto tr = canonical_transitions();
  std::vector<int> shifted{tr.back()};
  shifted.insert(shifted.end(), tr.begin(), tr.end() - 1);
  const gray::GrayCycle rotated = gray::from_transitions(4, shifted);
  CHECK(gray::is_balanced(rotated).balanced);
  CHECK(gray::canonical_form(rotated, gray::SymmetryGroupSpec::full()) == gray::canonical_balanced_code());
  for (double phase : {0.01, 0.2, 0.35}) {
    const Configuration next = sigma_loop_config(phase + kPi / 8, tr);
    // Same planes; the rotated code starts from another word, so orientations may flip.
    const Configuration other = sigma_loop_config(phase, shifted);
    for (int i = 0; i < 4; ++i) {
      const Vec& a = next.u[static_cast<std::size_t>(i)];
      const Vec& b = other.u[static_cast<std::size_t>(i)];
      CHECK(std::min((a - b).norm(), (a + b).norm()) < 1e-12);
    }
    CHECK(residual(gamma4_measure(), next) < 1e-10);
  }
}

TEST_CASE("loop is periodic and its derivative matches finite differences") {
  const auto tr = canonical_transitions();
  CHECK(config_distance(sigma_loop_config(0.3, tr), sigma_loop_config(0.3 + kTwoPi, tr)) < 1e-10);
  for (double phase : {0.05, 1.3, 4.0}) {
    const auto d = sigma_loop_derivative(phase, tr);
    const Configuration p = sigma_loop_config(phase + 1e-6, tr), m = sigma_loop_config(phase - 1e-6, tr);
    for (int i = 0; i < 4; ++i) CHECK((d[static_cast<std::size_t>(i)] - (p.u[i] - m.u[i]) / 2e-6).norm() < 1e-6);
  }
}

TEST_CASE("arc count bound") {
  const ArcBound four = arc_count_bound(4);
  CHECK(four.arcs == 16);
  CHECK(four.cells == 16);
  CHECK(four.feasible);
  const ArcBound five = arc_count_bound(5);
  CHECK(five.arcs == 25);
  CHECK(five.cells == 32);
  CHECK_FALSE(five.feasible);
  CHECK(arc_count_bound(2).feasible);
  CHECK(arc_count_bound(2).arcs == 4);
}

TEST_CASE("tube stand-in is close to the curve measure") {
  const Measure tube = gamma4_tube(64, 0.05);
  CHECK(std::abs(total_mass(tube) - kTwoPi) < 1e-12);
  const SolutionPoint sp = sigma_theta_config(0.02);
  CHECK(residual(tube, sp.config) < 0.02);
  CHECK_THROWS_AS(gamma4_tube(2, 0.1), InputError);
}
