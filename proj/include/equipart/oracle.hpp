#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/measure.hpp"

#include <functional>
#include <optional>

namespace equipart {

/// What the solvers need from a measure: orthant masses for any configuration, plus hints
/// for bracketing. Blends, frame changes and projected views are all oracles.
struct MassOracle {
  int dim = 0;
  double total = 0.0;
  /// Largest point mass (0 for continuous measures); limits attainable residuals.
  double granularity = 0.0;
  Vec center;          // rough location for brackets
  double scale = 1.0;  // rough spread for brackets
  std::function<MassVector(const Configuration&)> masses;
  /// Optional fast path: offset c with mass{a.x >= c} = total/2 (plateau midpoint for atoms).
  std::function<double(const Vec&)> halving;

  /// Smallest residual worth asking for.
  double residual_floor() const { return granularity > 0.0 ? granularity / total : 0.0; }
};

MassOracle make_oracle(const Measure& measure);

/// (1 - t) a / |a| + t b / |b|; unit total mass.
MassOracle blend(const MassOracle& a, const MassOracle& b, double t);

/// Affine frame x = linear * y + offset (linear invertible).
struct AffineFrame {
  Mat linear;
  Vec offset;

  int dim() const { return static_cast<int>(offset.size()); }
  /// Hyperplane given in y coordinates, expressed in x coordinates.
  Vec to_world(const Vec& uy) const;
  Vec to_local(const Vec& ux) const;
  Configuration to_world(const Configuration& cy) const;
  Configuration to_local(const Configuration& cx) const;
};

/// The oracle seen in y coordinates of the frame.
MassOracle in_frame(const MassOracle& world, const AffineFrame& frame);

/// Offset c (for unit normal a) with mass{a.x >= c} = total/2; plateau midpoint for atoms.
double halving_offset(const MassOracle& oracle, const Vec& a);

/// Worker count used by multi-start loops; 0 means hardware concurrency.
void set_worker_count(unsigned n);
unsigned worker_count();
/// Runs body(i) for i in [0, count) on the configured number of threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace equipart
