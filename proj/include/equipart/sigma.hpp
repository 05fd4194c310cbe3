#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"

#include <array>
#include <vector>

namespace equipart {

/// An equipartition of dt on gamma4 built from a balanced Gray code: division points at
/// phase + j pi/8, arc j = [x_j, x_{j+1}] carries codeword beta_j (beta_0 = 0), and the
/// hyperplane of track i passes through the four points x_{j+1} with transitions[j] = i.
struct SolutionPoint {
  double phase = 0.0;
  std::vector<int> transitions;                // 0-based tracks, length 16
  std::array<std::array<int, 4>, 4> division;  // division point indices per track, before g
  GroupElement g;
  Configuration config;
};

/// Uniform dt on gamma4 over [0, 2pi); total mass 2pi.
Measure gamma4_measure();

/// Smooth stand-in for gamma4_measure(): equal isotropic Gaussians of width sigma centred at
/// gamma4((k + 1/2) 2pi / beads); total mass 2pi. Same W_4 and reflection symmetries for even beads.
Measure gamma4_tube(int beads = 64, double sigma = 0.15);
/// Transition sequence of the canonical balanced 4-bit code.
std::vector<int> canonical_transitions();

/// Requires phase in [0, pi/8) and a balanced 4-bit transition sequence.
SolutionPoint sigma_theta_config(double phase, const std::vector<int>& transitions, const GroupElement& g);
SolutionPoint sigma_theta_config(double phase);

/// Same construction for any real phase; 2pi-periodic and continuous in the phase.
Configuration sigma_loop_config(double phase, const std::vector<int>& transitions);
/// Phase derivative of sigma_loop_config (analytic via implicit differentiation of the null vector).
std::vector<Vec> sigma_loop_derivative(double phase, const std::vector<int>& transitions);

/// Orthant codewords of the 16 arcs in parameter order starting at the arc after `phase`.
std::vector<unsigned> arc_labels(const Configuration& config, double phase);

struct Transversality {
  int rank = 0;
  double smallest = 0.0;  // 15th singular value (the smallest that should be nonzero)
  double kernel = 0.0;    // 16th singular value
  double alignment = 0.0; // |cos| between the kernel vector and the phase derivative
  std::vector<double> singular_values;
};

/// Finite-difference Jacobian (central, step 1e-6) of the exact gamma4 deviation with respect
/// to the 16 tangent directions of (S^4)^4; rank counted with tolerance 1e-6 * largest.
/// Throws NumericalError("degenerate solution") if the residual exceeds 1e-8.
Transversality transversality_check(const SolutionPoint& sp);

struct ArcBound {
  long long arcs = 0;   // n^2
  long long cells = 0;  // 2^n
  bool feasible = false;
};
ArcBound arc_count_bound(int n);

}  // namespace equipart
