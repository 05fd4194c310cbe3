#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace testing {

using equipart::Configuration;
using equipart::Mat;
using equipart::Vec;

inline Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = n(rng);
  return v / v.norm();
}

inline Vec random_point(std::mt19937_64& rng, int dim, double spread = 1.0) {
  std::normal_distribution<double> n(0.0, spread);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = n(rng);
  return v;
}

// Hyperplanes through points near the origin, so every orthant is usually populated.
inline Configuration random_config(std::mt19937_64& rng, int dim, int count = -1) {
  if (count < 0) count = dim;
  std::vector<Vec> u;
  for (int i = 0; i < count; ++i) {
    const Vec a = random_unit(rng, dim);
    const Vec p = random_point(rng, dim, 0.3);
    Vec v(dim + 1);
    v.head(dim) = a;
    v(dim) = -a.dot(p);
    u.push_back(v / v.norm());
  }
  return Configuration(dim, u);
}

inline equipart::GroupElement random_group_element(std::mt19937_64& rng, int n) {
  equipart::GroupElement g = equipart::GroupElement::identity(n);
  std::shuffle(g.perm.begin(), g.perm.end(), rng);
  for (int& s : g.signs) s = static_cast<int>(rng() & 1U);
  return g;
}

inline equipart::Measure random_cloud(std::mt19937_64& rng, int dim, int count) {
  equipart::PointCloud pc;
  pc.dim = dim;
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int i = 0; i < count; ++i) {
    pc.points.push_back(random_point(rng, dim));
    pc.weights.push_back(w(rng));
  }
  return equipart::Measure(pc);
}

inline equipart::Measure random_mixture(std::mt19937_64& rng, int dim, int components) {
  equipart::GaussianMixture g;
  g.dim = dim;
  std::uniform_real_distribution<double> w(0.5, 2.0), s(0.3, 0.8);
  for (int k = 0; k < components; ++k) {
    g.weights.push_back(w(rng));
    g.means.push_back(random_point(rng, dim));
    Mat f = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      f(i, i) = s(rng);
      for (int j = 0; j < i; ++j) f(i, j) = 0.3 * s(rng) - 0.15;
    }
    g.factors.push_back(f);
  }
  return equipart::Measure(g);
}

// Closed-orthant masses of a weighted cloud by direct sign evaluation.
inline std::vector<double> brute_masses(const std::vector<Vec>& pts, const std::vector<double>& w, const Configuration& c) {
  std::vector<double> m(static_cast<std::size_t>(1) << c.u.size(), 0.0);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::size_t beta = 0;
    for (std::size_t i = 0; i < c.u.size(); ++i) {
      double s = c.u[i](c.dim);
      for (int j = 0; j < c.dim; ++j) s += c.u[i](j) * pts[k](j);
      if (s < 0) beta |= std::size_t{1} << i;
    }
    m[beta] += w[k];
  }
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? d : 1e300;
}

}  // namespace testing
