#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/geometry.hpp"

#include <vector>

namespace equipart {

inline constexpr double kTwoPi = 2.0 * kPi;

/// t -> (cos t, sin t, cos 2t, sin 2t), the trigonometric curve in R^4.
Vec gamma4(double t);
Vec gamma4_derivative(double t);
/// t -> (t, t^2, ..., t^n).
Vec moment_point(double t, int n);

/// Unit null vector of the n x (n+1) matrix with rows (p_i, 1), so u . (p_i, 1) = 0.
/// Sign: first coordinate above 1e-12 in magnitude is positive.
/// Throws NumericalError("degenerate point set") when the rows have rank < n.
Vec hyperplane_through(const std::vector<Vec>& points);

/// Roots in [0, 2pi) of u . (gamma4(t), 1) = 0, sorted, tangencies listed twice.
/// Found as unit-circle eigenvalues of the companion matrix of the quartic in z = e^{it}.
std::vector<double> gamma4_intersections(const Vec& u);

/// Roots in [lo, hi] of u . (moment_point(t, n), 1) = 0, sorted.
std::vector<double> moment_intersections(const Vec& u, double lo, double hi);

/// Exact orthant masses of dt on [0, 2pi) along gamma4: interval lengths between the sorted
/// intersection parameters, labelled at interval midpoints.
MassVector gamma4_arc_masses(const Configuration& config);

/// Exact orthant masses of dt on [lo, hi] along the moment curve M_n.
MassVector moment_arc_masses(const Configuration& config, double lo, double hi);

}  // namespace equipart
