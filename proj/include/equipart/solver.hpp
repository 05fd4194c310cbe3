#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"
#include "equipart/oracle.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace equipart {

enum class Status { converged, stalled, delta_violation, max_iter, exhausted };
std::string to_string(Status s);

struct SolveReport {
  Configuration config;
  MassVector masses;
  double residual = 1.0;
  int iterations = 0;
  /// Continuation parameters visited, in order (empty when no continuation ran).
  std::vector<double> path;
  Status status = Status::stalled;
  std::string method;
  std::string message;

  bool converged() const { return status == Status::converged; }
};

struct RefineOptions {
  double target = 1e-10;
  int max_iter = 100;
  double delta_tol = kDefaultDeltaTol;
  /// Hyperplanes kept fixed (same length as the configuration, or empty).
  std::vector<bool> frozen;
  /// Finite-difference step in tangent coordinates.
  double fd_step = 1e-6;
};

/// Levenberg-Marquardt on the 2^m deviation entries over a product of spheres.
SolveReport refine(const MassOracle& oracle, const Configuration& start, const RefineOptions& options = {});
SolveReport refine(const Measure& measure, const Configuration& start, double target = 1e-10, int max_iter = 100);

struct SolveOptions {
  double target = 1e-10;
  unsigned seed = 0;
  int max_starts = 32;
};

/// Planar equipartition by two lines.
SolveReport solve_2d(const MassOracle& oracle, const SolveOptions& options = {});
SolveReport solve_2d(const Measure& measure, const SolveOptions& options = {});

/// Three planes in R^3; with `a` the first plane contains it, with `a` and `b` it contains both.
SolveReport solve_3d(const MassOracle& oracle, const std::optional<Vec>& a = std::nullopt,
                     const std::optional<Vec>& b = std::nullopt, const SolveOptions& options = {});
SolveReport solve_3d(const Measure& measure, const std::optional<Vec>& a = std::nullopt,
                     const std::optional<Vec>& b = std::nullopt, const SolveOptions& options = {});

/// Measure homotopy mu_t = (1 - t) mu_0 / |mu_0| + t mu_1 / |mu_1|.
struct MeasurePath {
  MassOracle start;
  MassOracle end;
  double initial_step = 0.05;
  double max_step = 0.25;
  double min_step = 1e-5;
  int max_steps = 2000;
  double corrector_tol = 1e-10;
};

/// Scalar gauge g(x) appended to the deviation so the zero set in (x, t) is a curve.
using Gauge = std::function<double(const Configuration&)>;

/// Pseudo-arclength predictor-corrector in (configuration, t), one branch per start.
/// Succeeds when any branch reaches t = 1; the result is then polished on mu_1 alone.
/// An empty gauge selects a moving phase condition instead: every step is sliced orthogonally
/// to the solution circle through the previous point.
SolveReport continue_path(const MeasurePath& path, const std::vector<Configuration>& starts, const Gauge& gauge,
                          double target = 1e-9);
/// sum_i (g1 . u_i)(g2 . u_i) with fixed generic g1 in span(e1, e2) and g2 in span(e3, e4, e5):
/// invariant under W_4, odd under the reflection in span(e3, e4).
Gauge default_gauge();
/// Same with the moving phase condition.
SolveReport continue_path(const MeasurePath& path, const std::vector<Configuration>& starts, double target = 1e-9);

/// Affine subspace point + span(directions).
struct Subspace {
  Vec point;
  std::vector<Vec> directions;
};

/// Relative orthant-mass mismatch between probe configurations and their mirror images.
double symmetry_defect(const MassOracle& oracle, const AffineReflection& reflection, int probes = 8);

struct Symmetric4dOptions {
  double target = 1e-9;
  double symmetry_tol = 1e-8;
  bool allow_fallback = true;
  unsigned seed = 0;
  /// Continuation attempts from distinct starts before falling back.
  int continuation_starts = 16;
};

/// Equipartition of a measure on R^4 invariant under reflection in the 2-plane L.
SolveReport solve_4d_symmetric(const MassOracle& oracle, const Subspace& plane, const Symmetric4dOptions& options = {});
SolveReport solve_4d_symmetric(const Measure& measure, const Subspace& plane, const Symmetric4dOptions& options = {});

/// Centrally symmetric measure about `center`; the first hyperplane passes through the centre
/// with the requested normal (default e1).
SolveReport solve_4d_center(const MassOracle& oracle, const Vec& center, const std::optional<Vec>& normal = std::nullopt,
                            const SolveOptions& options = {});
SolveReport solve_4d_center(const Measure& measure, const Vec& center, const std::optional<Vec>& normal = std::nullopt,
                            const SolveOptions& options = {});

/// Measure symmetric in the affine 3-plane K; the first hyperplane is K.
SolveReport solve_4d_mirror3(const MassOracle& oracle, const Subspace& k, const SolveOptions& options = {});
SolveReport solve_4d_mirror3(const Measure& measure, const Subspace& k, const SolveOptions& options = {});

struct CloudOptions {
  std::optional<Subspace> plane;  // symmetry 2-plane; absent means general position
  int max_rounds = 60;
  double shrink = 0.6;       // mollifier width factor per round
  double track_tol = 1e-7;   // residual target while shrinking; the bound itself is checked by counting
  unsigned seed = 0;
  int continuation_starts = 0;  // passed to the symmetric solver; clouds go straight to refinement by default
};

struct CloudReport {
  SolveReport solve;
  std::vector<int> counts;  // points strictly inside each open orthant
  int bound = 0;            // d, or 2d for the general case
  int max_count = 0;
  double sigma = 0.0;       // final smoothing width
  int rounds = 0;
  bool certified = false;
};

/// 16 d points in R^4: hyperplanes whose open orthants hold at most d points each (symmetric
/// case) or at most 2 d (general case, via the symmetrised doubled cloud).
CloudReport partition_point_cloud(const std::vector<Vec>& points, int d, const CloudOptions& options = {});

/// Counts of points strictly inside each open orthant.
std::vector<int> open_orthant_counts(const std::vector<Vec>& points, const Configuration& config);

/// Internal: the refinement loop shared by 4D pipelines (gauge-free, seeds along the gamma4 loop).
std::vector<Configuration> loop_seeds(int count);

}  // namespace equipart
