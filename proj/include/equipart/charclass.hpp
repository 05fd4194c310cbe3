#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace equipart {

/// Degree-bounded mod-2 cohomology rings of the two surfaces:
/// Z2[t]/(t^{top+1}) for projective space and the exterior algebra on a, b for the torus.
struct F2Algebra {
  enum class Kind { truncated, exterior };
  Kind kind = Kind::truncated;
  int top = 2;

  static F2Algebra projective(int top = 2) { return {Kind::truncated, top}; }
  static F2Algebra torus() { return {Kind::exterior, 2}; }
  /// Number of basis monomials.
  int size() const { return kind == Kind::exterior ? 4 : top + 1; }
  int degree(int monomial) const;
  std::string monomial_name(int monomial) const;
  bool operator==(const F2Algebra& o) const { return kind == o.kind && top == o.top; }
};

/// Element of an F2Algebra. Monomials: t^k at index k (truncated) or the subset mask of {a, b}
/// (exterior: 0 -> 1, 1 -> a, 2 -> b, 3 -> ab).
class F2Class {
 public:
  F2Class() = default;
  explicit F2Class(F2Algebra algebra);
  static F2Class one(F2Algebra algebra);
  static F2Class monomial(F2Algebra algebra, int index);
  /// Exterior generators a and b, truncated generator t.
  static F2Class a();
  static F2Class b();
  static F2Class t(int top = 2);

  const F2Algebra& algebra() const { return algebra_; }
  int coefficient(int monomial) const { return coeffs_.at(static_cast<std::size_t>(monomial)); }
  void set(int monomial, int value) { coeffs_.at(static_cast<std::size_t>(monomial)) = static_cast<std::uint8_t>(value & 1); }
  int constant() const { return coefficient(0); }
  bool is_zero() const;
  /// Homogeneous component of the given degree.
  F2Class component(int degree) const;
  bool is_homogeneous(int degree) const;

  F2Class operator+(const F2Class& o) const;
  F2Class operator*(const F2Class& o) const;
  bool operator==(const F2Class& o) const { return algebra_ == o.algebra_ && coeffs_ == o.coeffs_; }
  bool operator!=(const F2Class& o) const { return !(*this == o); }
  /// Monomials in increasing degree joined by " + "; "0" for zero.
  std::string to_string() const;

 private:
  F2Algebra algebra_;
  std::vector<std::uint8_t> coeffs_;
  void check_same(const F2Class& o) const;
};

/// Multiplicative inverse; throws InputError when the constant term is 0.
F2Class inverse(const F2Class& c);
/// c^k by repeated multiplication.
F2Class power(const F2Class& c, int k);

enum class LineBundle { trivial, l00, l01, l10, l11, gamma };
std::string bundle_name(LineBundle b);

/// Formal sum of line bundles over one surface.
struct BundleSpec {
  F2Algebra algebra = F2Algebra::torus();
  std::vector<std::pair<LineBundle, int>> terms;

  BundleSpec& add(LineBundle b, int multiplicity);
  std::string to_string() const;
};

/// First Stiefel-Whitney class of a named line bundle in the given algebra.
F2Class line_w1(LineBundle b, const F2Algebra& algebra);
/// Product of (1 + w1) over the summands.
F2Class total_class(const BundleSpec& spec);
/// Degree-2 part of w(plus) w(minus)^{-1}; cross-checked against the A2 formula
/// w2(+) + w1(+) w1(-) + w1(-)^2 + w2(-) (NumericalError if the two disagree).
F2Class virtual_w2(const BundleSpec& plus, const BundleSpec& minus);
/// The A2 formula alone.
F2Class a2_formula(const F2Class& plus, const F2Class& minus);
/// Coefficient of the top class (ab or t^2); InputError unless c2 is homogeneous of degree 2.
int evaluate_fundamental(const F2Class& c2);
/// (1 + t)^{n+1} in Z2[t]/(t^{m+1}); InputError unless 0 <= m <= n.
F2Class tangent_restriction_class(int n, int m);

struct ObstructionReport {
  BundleSpec phi1_plus, phi1_minus, phi2_plus, phi2_minus, cor_plus, cor_minus;
  F2Class w_phi1_plus, w_phi1_minus, w_phi2_plus, w_phi2_minus;
  F2Class w2_torus, w2_projective, w2_cor;
  F2Class tangent_route, gamma5_route;
  int torus = 0;
  int projective = 0;

  std::pair<int, int> values() const { return {torus, projective}; }
};

/// Builds the torus and projective-plane virtual bundles and evaluates w2 on both
/// fundamental classes. Internal disagreements raise NumericalError.
ObstructionReport reproduce_obstruction_inputs();
/// Fixed multi-line text used by the CLI.
std::string format_report(const ObstructionReport& r);

}  // namespace equipart
