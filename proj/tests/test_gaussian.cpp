#include "doctest.h"

#include "equipart/gaussian.hpp"

#include <cmath>

using namespace equipart::gauss;

namespace {

constexpr double kPi = 3.14159265358979323846;

double phi_erfc(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// P(X > h, Y > k) = int_h^inf phi(x) (1 - Phi((k - r x) / sqrt(1 - r^2))) dx, composite Simpson.
double bvn_simpson(double h, double k, double r) {
  const int n = 20000;
  const double lo = h, hi = std::max(h, 0.0) + 12.0;
  const double dx = (hi - lo) / n;
  const double s = std::sqrt(1.0 - r * r);
  auto f = [&](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi) * (1.0 - phi_erfc((k - r * x) / s)); };
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * dx);
  return acc * dx / 3.0;
}

StandardNormal equicorrelated(int dim, double rho) {
  StandardNormal y;
  y.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) y.corr[i][j] = i == j ? 1.0 : rho;
  return y;
}

}  // namespace

TEST_CASE("normal cdf against erfc") {
  for (double x : {-9.0, -3.3, -1.0, 0.0, 0.4, 1.96, 5.0}) CHECK(normal_cdf(x) == doctest::Approx(phi_erfc(x)).epsilon(1e-13));
  CHECK(normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2 * kPi)));
}

TEST_CASE("bivariate upper tail at the origin has a closed form") {
  for (double r : {-0.95, -0.5, 0.0, 0.3, 0.8, 0.999999}) {
    CHECK(std::abs(bvn_upper(0.0, 0.0, r) - (0.25 + std::asin(r) / (2 * kPi))) < 1e-13);
  }
}

TEST_CASE("bivariate upper tail factorises without correlation") {
  for (double h : {-1.5, 0.2, 2.0})
    for (double k : {-0.7, 1.1}) CHECK(std::abs(bvn_upper(h, k, 0.0) - (1 - phi_erfc(h)) * (1 - phi_erfc(k))) < 1e-14);
}

TEST_CASE("bivariate upper tail against quadrature") {
  const double cases[][3] = {{0.3, -0.4, 0.6}, {-1.2, 0.8, -0.7}, {1.5, 1.5, 0.95}, {-0.2, -2.0, 0.2}, {0.7, 0.1, -0.99}};
  for (const auto& c : cases) CHECK(std::abs(bvn_upper(c[0], c[1], c[2]) - bvn_simpson(c[0], c[1], c[2])) < 1e-10);
}

TEST_CASE("equicorrelated orthants of correlation one half") {
  // P(all positive) = 1 / (dim + 1) when every correlation is 1/2.
  for (int dim = 2; dim <= 4; ++dim) {
    const auto p = orthant_probabilities(equicorrelated(dim, 0.5));
    CHECK(std::abs(p[0] - 1.0 / (dim + 1)) < 1e-11);
    CHECK(std::abs(p[(1u << dim) - 1] - 1.0 / (dim + 1)) < 1e-11);
    double sum = 0.0;
    for (int b = 0; b < (1 << dim); ++b) sum += p[b];
    CHECK(std::abs(sum - 1.0) < 1e-14);
  }
}

TEST_CASE("independent components with means give products") {
  StandardNormal y = equicorrelated(4, 0.0);
  y.mean = {0.3, -1.1, 2.0, 0.0};
  const auto p = orthant_probabilities(y);
  for (int b = 0; b < 16; ++b) {
    double want = 1.0;
    for (int i = 0; i < 4; ++i) want *= (b >> i & 1) ? phi_erfc(-y.mean[i]) : 1.0 - phi_erfc(-y.mean[i]);
    CHECK(std::abs(p[b] - want) < 1e-11);
  }
}

TEST_CASE("nearly singular correlation stays accurate") {
  const auto p = orthant_probabilities(equicorrelated(2, 1.0 - 1e-10));
  CHECK(std::abs(p[0] - (0.25 + std::asin(1.0 - 1e-10) / (2 * kPi))) < 1e-10);
  CHECK(std::abs(p[1]) < 1e-5);
}

TEST_CASE("far means are treated as sure") {
  StandardNormal y = equicorrelated(3, 0.2);
  y.mean = {20.0, 0.0, -20.0};
  const auto p = orthant_probabilities(y);
  CHECK(std::abs(p[0b100] - 0.5) < 1e-12);
  CHECK(std::abs(p[0b110] - 0.5) < 1e-12);
}
