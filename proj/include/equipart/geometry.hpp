#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace equipart {

/// Small stack-allocated vector for points in R^n and lifted normals in R^{n+1}, n <= 4.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 5, 1>;
using Mat = Eigen::MatrixXd;

inline constexpr int kMaxDim = 4;
inline constexpr double kPi = 3.14159265358979323846;

/// Raised for violated preconditions and malformed input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot produce a result (degeneracy, no root, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vec to_vec(const std::vector<double>& xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

inline std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

/// Orthonormal basis of the orthogonal complement of unit vector `u`, as columns.
Mat tangent_basis(const Vec& u);

/// Orthonormal basis (columns) of span(vectors); throws InputError if rank-deficient.
Mat orthonormalize(const std::vector<Vec>& vectors, double tol = 1e-12);

/// Completes an orthonormal set (columns of `partial`) to a basis of R^dim; new columns follow.
Mat complete_basis(const Mat& partial, int dim);

/// Reflection through the affine subspace origin + span(directions): x -> o + 2P(x-o) - (x-o).
struct AffineReflection {
  Vec origin;
  Mat directions;  // orthonormal columns, may be empty (point reflection)

  static AffineReflection through(const Vec& origin, const std::vector<Vec>& directions);
  int dim() const { return static_cast<int>(origin.size()); }
  int subspace_dim() const { return static_cast<int>(directions.cols()); }
  Vec apply(const Vec& x) const;
  /// Linear part, a symmetric orthogonal matrix.
  Mat linear() const;
};

/// Van der Corput radical inverse of `index` in `base`.
double radical_inverse(unsigned index, unsigned base);

/// Deterministic low-discrepancy unit vector in R^dim (dim in {2,3,4,5}) from the Halton sequence.
Vec halton_direction(unsigned index, int dim);

}  // namespace equipart
