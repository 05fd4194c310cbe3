#pragma once

#include "equipart/geometry.hpp"

#include <vector>

namespace equipart {

class Measure;

using MassVector = std::vector<double>;
using Deviation = std::vector<double>;

/// Oriented affine hyperplane {x : a.x >= c} is the positive side; |a| = 1.
struct Hyperplane {
  Vec a;
  double c = 0.0;

  /// Normalises (a, c) by |a|; throws InputError when a vanishes.
  static Hyperplane make(const Vec& a, double c);
  int dim() const { return static_cast<int>(a.size()); }
  double signed_distance(const Vec& x) const { return a.dot(x) - c; }
};

/// Lifted arrangement: unit vectors u_i in R^{n+1}; point x lies on the positive closed
/// side of hyperplane i when u_i . (x, 1) >= 0. Fewer than n hyperplanes are allowed.
struct Configuration {
  int dim = 0;
  std::vector<Vec> u;

  /// Validates |u_i| = 1 within 1e-12 and the ambient dimension.
  Configuration(int dim, std::vector<Vec> normals);
  Configuration() = default;

  /// Same as the constructor but rescales each vector to unit length first.
  static Configuration normalized(int dim, std::vector<Vec> normals);
  static Configuration from_hyperplanes(const std::vector<Hyperplane>& hs);

  int count() const { return static_cast<int>(u.size()); }
  int cells() const { return 1 << count(); }
  /// Index of the orthant holding x, bit i set when x is strictly on the negative side of i.
  int orthant_of(const Vec& x) const;
  /// True when x lies off every hyperplane; `orthant` receives its index.
  bool strict_orthant_of(const Vec& x, int& orthant, double tol = 0.0) const;
  std::vector<Hyperplane> hyperplanes() const;
};

Vec lift(const Hyperplane& h);
Hyperplane unlift(const Vec& u);

/// Smallest angle between the lines spanned by two different u_i (pi/2 for a single vector).
double min_line_angle(const Configuration& config);
inline constexpr double kDefaultDeltaTol = 1e-8;
inline bool delta_condition(const Configuration& config, double tol = kDefaultDeltaTol) {
  return min_line_angle(config) > tol;
}

/// Element of W_n = (Z/2)^n x| S_n. perm[j] is the image of position j (0-based).
struct GroupElement {
  std::vector<int> signs;
  std::vector<int> perm;

  static GroupElement identity(int n);
  /// Throws InputError unless perm is a bijection and signs are bits of equal length.
  void validate() const;
  int size() const { return static_cast<int>(perm.size()); }
  bool is_identity() const;
  /// (this * other)(x) = this(other(x)).
  GroupElement compose(const GroupElement& other) const;
  GroupElement inverse() const;
};

/// All 2^n n! elements in a fixed order (sign mask major, permutations lexicographic).
std::vector<GroupElement> all_group_elements(int n);

/// Output position perm[j] holds (-1)^{signs[j]} u_j.
Configuration act(const GroupElement& g, const Configuration& config);
/// beta'_{perm[j]} = beta_j xor signs[j].
int act_index(const GroupElement& g, int beta);
/// Reorders a mass (or deviation) vector: out[act_index(g, b)] = in[b].
std::vector<double> act_masses(const GroupElement& g, const std::vector<double>& masses);

/// d_beta = b_beta - total / 2^m.
Deviation deviation_from_masses(const MassVector& masses, double total);
/// max_beta |d_beta| / total.
double residual_from_masses(const MassVector& masses, double total);

Deviation test_map(const Measure& measure, const Configuration& config);
double residual(const Measure& measure, const Configuration& config);

/// Max over i of |u_i - v_i|, the distance used to compare ordered tuples.
double config_distance(const Configuration& a, const Configuration& b);

}  // namespace equipart
