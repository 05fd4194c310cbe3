#pragma once

#include "equipart/arrangement.hpp"
#include "equipart/geometry.hpp"

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace equipart {

/// Weighted point masses. Points on a hyperplane count towards its positive side.
struct PointCloud {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<double> weights;
};

/// Piecewise constant density on an axis-aligned box; `density` holds one value per cell in
/// row-major order (last axis fastest). Masses use the midpoint rule: a cell's mass sits at
/// its centre, so accuracy is limited by the resolution.
struct GridDensity {
  int dim = 0;
  Vec lower, upper;
  std::vector<int> resolution;
  std::vector<double> density;

  double cell_volume() const;
  Vec cell_center(std::size_t flat) const;
};

/// Density along a parametrised curve, measured against dt on [lo, hi].
struct CurveMeasure {
  enum class Kind { gamma4, moment, custom };
  Kind kind = Kind::gamma4;
  int dim = 4;
  double lo = 0.0;
  double hi = 6.283185307179586;
  /// Polynomial density coefficients in t (c0 + c1 t + ...); empty means the constant 1.
  std::vector<double> density;
  int samples = 1024;
  /// Only for Kind::custom.
  std::function<Vec(double)> map;
  /// Optional affine placement x -> linear * x + offset applied after the base curve.
  Mat linear;
  Vec offset;

  bool uniform() const { return density.empty(); }
  bool placed() const { return linear.size() > 0; }
  double density_at(double t) const;
  Vec point(double t) const;
  /// Hyperplane in base-curve coordinates equivalent to u for the placed curve.
  Vec pull_back(const Vec& u) const;
};

/// Finite mixture of nondegenerate normal distributions; component k has covariance
/// factors[k] * factors[k]^T.
struct GaussianMixture {
  int dim = 0;
  std::vector<double> weights;
  std::vector<Vec> means;
  std::vector<Mat> factors;
};

class Measure {
 public:
  using Variant = std::variant<PointCloud, GridDensity, CurveMeasure, GaussianMixture>;

  /// Validates the invariants of each type and rejects zero total mass (InputError).
  Measure(PointCloud m);
  Measure(GridDensity m);
  Measure(CurveMeasure m);
  Measure(GaussianMixture m);

  int dim() const;
  const Variant& variant() const { return impl_->value; }
  double total() const { return impl_->total; }
  /// Point masses for clouds and grids (cell centres with nonzero mass); empty otherwise.
  const std::vector<Vec>& atoms() const { return impl_->atoms; }
  const std::vector<double>& atom_weights() const { return impl_->atom_weights; }
  bool is_atomic() const { return !impl_->atoms.empty(); }
  /// Largest single atom weight; 0 for measures without atoms.
  double max_atom() const { return impl_->max_atom; }

 private:
  struct Impl {
    Variant value;
    double total = 0.0;
    std::vector<Vec> atoms;
    std::vector<double> atom_weights;
    double max_atom = 0.0;
  };
  std::shared_ptr<const Impl> impl_;
  void init(Variant v);
};

MassVector orthant_masses(const Measure& measure, const Configuration& config);
double total_mass(const Measure& measure);

/// Average of the measure and its image under the reflection.
/// Clouds and mixtures are exact (coincident points/components are merged within 1e-12).
/// Grids are resampled by multilinear interpolation onto a grid covering box and reflected
/// box with the same cell size, then rescaled to the original total; the pointwise error is
/// at most half the density's variation across one cell. Curves are rejected.
Measure symmetrize(const Measure& measure, const AffineReflection& reflection);

/// Barycentre.
Vec centroid(const Measure& measure);
/// sqrt(E|x - center|^2).
double rms_radius(const Measure& measure, const Vec& center);

/// Pushforward under x -> A x + b (A invertible).
Measure transform(const Measure& measure, const Mat& a, const Vec& b);

/// Convenience constructors.
Measure make_gaussian(const Vec& mean, double sigma, double weight = 1.0);
Measure uniform_box(const Vec& lower, const Vec& upper, const std::vector<int>& resolution);

}  // namespace equipart
