#include "equipart/geometry.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>

namespace equipart {

Mat tangent_basis(const Vec& u) {
  const int m = static_cast<int>(u.size());
  // Householder reflector mapping e_k to u; its other columns span u^perp.
  int k = 0;
  u.cwiseAbs().maxCoeff(&k);
  Vec v = u;
  const double s = u(k) >= 0 ? 1.0 : -1.0;
  v(k) += s * u.norm();
  const double vv = v.squaredNorm();
  Mat basis(m, m - 1);
  int col = 0;
  for (int j = 0; j < m; ++j) {
    if (j == k) continue;
    Vec e = Vec::Zero(m);
    e(j) = 1.0;
    basis.col(col++) = e - (2.0 * v.dot(e) / vv) * v;
  }
  return basis;
}

Mat orthonormalize(const std::vector<Vec>& vectors, double tol) {
  if (vectors.empty()) return Mat(0, 0);
  const int m = static_cast<int>(vectors.front().size());
  Mat q(m, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != m) throw InputError("orthonormalize: dimension mismatch");
    Eigen::VectorXd x = vectors[j];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < j; ++i) x -= q.col(static_cast<Eigen::Index>(i)).dot(x) * q.col(static_cast<Eigen::Index>(i));
    const double nrm = x.norm();
    if (nrm < tol * std::max(1.0, vectors[j].norm()))
      throw InputError("orthonormalize: spanning vectors are linearly dependent");
    q.col(static_cast<Eigen::Index>(j)) = x / nrm;
  }
  return q;
}

Mat complete_basis(const Mat& partial, int dim) {
  Mat out(dim, dim);
  const int have = static_cast<int>(partial.cols());
  if (have > 0) out.leftCols(have) = partial;
  int filled = have;
  for (int e = 0; e < dim && filled < dim; ++e) {
    Eigen::VectorXd x = Eigen::VectorXd::Unit(dim, e);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < filled; ++i) x -= out.col(i).dot(x) * out.col(i);
    const double nrm = x.norm();
    if (nrm > 1e-6) out.col(filled++) = x / nrm;
  }
  return out;
}

AffineReflection AffineReflection::through(const Vec& origin, const std::vector<Vec>& directions) {
  AffineReflection r;
  r.origin = origin;
  r.directions = directions.empty() ? Mat(origin.size(), 0) : orthonormalize(directions);
  if (r.directions.rows() != origin.size() && !directions.empty())
    throw InputError("reflection: direction dimension mismatch");
  return r;
}

Vec AffineReflection::apply(const Vec& x) const {
  const Vec d = x - origin;
  Vec proj = Vec::Zero(d.size());
  for (int j = 0; j < directions.cols(); ++j) proj += directions.col(j).dot(d) * directions.col(j);
  return origin + 2.0 * proj - d;
}

Mat AffineReflection::linear() const {
  const int n = dim();
  Mat p = Mat::Zero(n, n);
  if (directions.cols() > 0) p = directions * directions.transpose();
  return 2.0 * p - Mat::Identity(n, n);
}

double radical_inverse(unsigned index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

Vec halton_direction(unsigned index, int dim) {
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11};
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    // Offset by one so index 0 is not the all-zero point.
    const double h = radical_inverse(index + 1, kPrimes[i]);
    v(i) = std::sqrt(2.0) * boost::math::erf_inv(2.0 * h - 1.0);
  }
  const double nrm = v.norm();
  if (nrm < 1e-12) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / nrm;
}

}  // namespace equipart
