#pragma once

#include <array>

namespace equipart::gauss {

double normal_pdf(double x);
double normal_cdf(double x);

/// P(X > h, Y > k) for a standard bivariate normal with correlation r (Genz's BVNU algorithm).
double bvn_upper(double h, double k, double r);

/// Standardised normal vector of dimension <= 4: means plus a unit-diagonal correlation matrix.
struct StandardNormal {
  int dim = 0;
  std::array<double, 4> mean{};
  std::array<std::array<double, 4>, 4> corr{};
};

/// Probabilities of all 2^dim sign patterns of Y ~ N(mean, corr).
/// Bit i of the pattern index is 0 when Y_i >= 0 and 1 when Y_i < 0.
/// Variables whose |mean| exceeds ~8.5 standard deviations are treated as sure. Upper
/// orthant probabilities of every subset come from Plackett's reduction (a 1-d integral
/// over a correlation homotopy) and patterns follow by inclusion-exclusion. Absolute
/// accuracy is ~1e-11 even for nearly singular correlations; entries may dip below zero
/// by that much, and they always sum to one to rounding.
std::array<double, 16> orthant_probabilities(const StandardNormal& y);

}  // namespace equipart::gauss
