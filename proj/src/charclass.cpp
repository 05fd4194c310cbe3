#include "equipart/charclass.hpp"

#include "equipart/geometry.hpp"

#include <bit>
#include <sstream>

namespace equipart {

int F2Algebra::degree(int monomial) const {
  return kind == Kind::exterior ? std::popcount(static_cast<unsigned>(monomial)) : monomial;
}

std::string F2Algebra::monomial_name(int monomial) const {
  if (monomial == 0) return "1";
  if (kind == Kind::exterior) {
    static const char* names[] = {"1", "a", "b", "ab"};
    return names[monomial];
  }
  return monomial == 1 ? "t" : "t^" + std::to_string(monomial);
}

F2Class::F2Class(F2Algebra algebra) : algebra_(algebra), coeffs_(static_cast<std::size_t>(algebra.size()), 0) {
  if (algebra.kind == F2Algebra::Kind::truncated && algebra.top < 0) throw InputError("truncation degree must be >= 0");
}

F2Class F2Class::one(F2Algebra algebra) { return monomial(algebra, 0); }

F2Class F2Class::monomial(F2Algebra algebra, int index) {
  F2Class c(algebra);
  if (index < 0 || index >= algebra.size()) throw InputError("monomial index out of range");
  c.set(index, 1);
  return c;
}

F2Class F2Class::a() { return monomial(F2Algebra::torus(), 1); }
F2Class F2Class::b() { return monomial(F2Algebra::torus(), 2); }
F2Class F2Class::t(int top) {
  if (top < 1) throw InputError("t vanishes when the truncation degree is 0");
  return monomial(F2Algebra::projective(top), 1);
}

bool F2Class::is_zero() const {
  for (auto c : coeffs_)
    if (c) return false;
  return true;
}

F2Class F2Class::component(int degree) const {
  F2Class out(algebra_);
  for (int m = 0; m < algebra_.size(); ++m)
    if (algebra_.degree(m) == degree) out.set(m, coefficient(m));
  return out;
}

bool F2Class::is_homogeneous(int degree) const {
  for (int m = 0; m < algebra_.size(); ++m)
    if (coefficient(m) && algebra_.degree(m) != degree) return false;
  return true;
}

void F2Class::check_same(const F2Class& o) const {
  if (!(algebra_ == o.algebra_)) throw InputError("classes live in different algebras");
}

F2Class F2Class::operator+(const F2Class& o) const {
  check_same(o);
  F2Class out(algebra_);
  for (int m = 0; m < algebra_.size(); ++m) out.set(m, coefficient(m) ^ o.coefficient(m));
  return out;
}

F2Class F2Class::operator*(const F2Class& o) const {
  check_same(o);
  F2Class out(algebra_);
  for (int i = 0; i < algebra_.size(); ++i) {
    if (!coefficient(i)) continue;
    for (int j = 0; j < algebra_.size(); ++j) {
      if (!o.coefficient(j)) continue;
      int k;
      if (algebra_.kind == F2Algebra::Kind::exterior) {
        if (i & j) continue;  // a^2 = b^2 = 0; signs vanish mod 2
        k = i | j;
      } else {
        k = i + j;
        if (k > algebra_.top) continue;
      }
      out.set(k, out.coefficient(k) ^ 1);
    }
  }
  return out;
}

std::string F2Class::to_string() const {
  std::vector<int> order(static_cast<std::size_t>(algebra_.size()));
  for (int m = 0; m < algebra_.size(); ++m) order[static_cast<std::size_t>(m)] = m;
  std::string s;
  for (int deg = 0; deg <= algebra_.top; ++deg)
    for (int m : order)
      if (algebra_.degree(m) == deg && coefficient(m)) s += (s.empty() ? "" : " + ") + algebra_.monomial_name(m);
  return s.empty() ? "0" : s;
}

F2Class power(const F2Class& c, int k) {
  if (k < 0) throw InputError("negative power");
  F2Class out = F2Class::one(c.algebra());
  for (int i = 0; i < k; ++i) out = out * c;
  return out;
}

F2Class inverse(const F2Class& c) {
  if (c.constant() != 1) throw InputError("class with zero constant term is not invertible");
  // c = 1 + x with x nilpotent: inverse = sum x^k.
  const F2Class one = F2Class::one(c.algebra());
  const F2Class x = c + one;
  F2Class out = one, term = one;
  for (int k = 1; k <= c.algebra().top; ++k) {
    term = term * x;
    out = out + term;
  }
  return out;
}

std::string bundle_name(LineBundle b) {
  switch (b) {
    case LineBundle::trivial: return "e";
    case LineBundle::l00: return "l00";
    case LineBundle::l01: return "l01";
    case LineBundle::l10: return "l10";
    case LineBundle::l11: return "l11";
    case LineBundle::gamma: return "g";
  }
  return "?";
}

BundleSpec& BundleSpec::add(LineBundle b, int multiplicity) {
  if (multiplicity < 0) throw InputError("negative multiplicity");
  terms.emplace_back(b, multiplicity);
  return *this;
}

std::string BundleSpec::to_string() const {
  std::string s;
  for (const auto& [b, k] : terms) {
    if (k == 0) continue;
    s += (s.empty() ? "" : " + ") + bundle_name(b) + (k == 1 ? "" : "^" + std::to_string(k));
  }
  return s.empty() ? "0" : s;
}

F2Class line_w1(LineBundle b, const F2Algebra& algebra) {
  const bool torus = algebra.kind == F2Algebra::Kind::exterior;
  F2Class w(algebra);
  switch (b) {
    case LineBundle::trivial: return w;
    case LineBundle::gamma:
      if (torus) throw InputError("the tautological bundle lives over the projective plane");
      if (algebra.top >= 1) w.set(1, 1);
      return w;
    default: break;
  }
  if (!torus) throw InputError(bundle_name(b) + " lives over the torus");
  const int bits = b == LineBundle::l01 ? 2 : b == LineBundle::l10 ? 1 : b == LineBundle::l11 ? 3 : 0;
  if (bits & 1) w.set(1, 1);
  if (bits & 2) w.set(2, 1);
  return w;
}

F2Class total_class(const BundleSpec& spec) {
  F2Class w = F2Class::one(spec.algebra);
  const F2Class one = w;
  for (const auto& [b, k] : spec.terms) {
    if (k < 0) throw InputError("negative multiplicity");
    w = w * power(one + line_w1(b, spec.algebra), k);
  }
  return w;
}

F2Class a2_formula(const F2Class& plus, const F2Class& minus) {
  const F2Class w1p = plus.component(1), w2p = plus.component(2);
  const F2Class w1m = minus.component(1), w2m = minus.component(2);
  return w2p + w1p * w1m + w1m * w1m + w2m;
}

F2Class virtual_w2(const BundleSpec& plus, const BundleSpec& minus) {
  if (!(plus.algebra == minus.algebra)) throw InputError("bundles over different surfaces");
  const F2Class wp = total_class(plus), wm = total_class(minus);
  const F2Class direct = (wp * inverse(wm)).component(2);
  const F2Class formula = a2_formula(wp, wm);
  if (direct != formula) throw NumericalError("A2 formula disagrees with the product-inverse route");
  return direct;
}

int evaluate_fundamental(const F2Class& c2) {
  const F2Algebra& alg = c2.algebra();
  if (alg.top < 2) throw InputError("algebra has no degree-2 class");
  if (!c2.is_homogeneous(2)) throw InputError("fundamental class evaluation needs a homogeneous degree-2 class");
  return c2.coefficient(alg.kind == F2Algebra::Kind::exterior ? 3 : 2);
}

F2Class tangent_restriction_class(int n, int m) {
  if (m < 0 || m > n) throw InputError("need 0 <= m <= n");
  const F2Algebra alg = F2Algebra::projective(m);
  F2Class c(alg);
  // C(n+1, k) mod 2 is 1 iff k's bits are a subset of (n+1)'s (Lucas).
  const unsigned top = static_cast<unsigned>(n + 1);
  for (int k = 0; k <= m; ++k) c.set(k, (static_cast<unsigned>(k) & ~top) == 0 ? 1 : 0);
  return c;
}

ObstructionReport reproduce_obstruction_inputs() {
  ObstructionReport r;
  const F2Algebra torus = F2Algebra::torus(), proj = F2Algebra::projective(2);
  r.phi1_plus.algebra = r.phi1_minus.algebra = r.cor_plus.algebra = r.cor_minus.algebra = torus;
  r.phi2_plus.algebra = r.phi2_minus.algebra = proj;
  r.phi1_plus.add(LineBundle::trivial, 3).add(LineBundle::l01, 4).add(LineBundle::l10, 4).add(LineBundle::l11, 4);
  r.phi1_minus.add(LineBundle::trivial, 6).add(LineBundle::l01, 5).add(LineBundle::l10, 5);
  r.phi2_plus.add(LineBundle::trivial, 7).add(LineBundle::gamma, 8);
  r.phi2_minus.add(LineBundle::trivial, 11).add(LineBundle::gamma, 5);
  r.cor_plus.add(LineBundle::l11, 4);
  r.cor_minus.add(LineBundle::l01, 1).add(LineBundle::l10, 1).add(LineBundle::trivial, 3);

  r.w_phi1_plus = total_class(r.phi1_plus);
  r.w_phi1_minus = total_class(r.phi1_minus);
  r.w_phi2_plus = total_class(r.phi2_plus);
  r.w_phi2_minus = total_class(r.phi2_minus);
  r.w2_torus = virtual_w2(r.phi1_plus, r.phi1_minus);
  r.w2_projective = virtual_w2(r.phi2_plus, r.phi2_minus);
  r.w2_cor = virtual_w2(r.cor_plus, r.cor_minus);
  if (r.w2_cor != r.w2_torus) throw NumericalError("virtual-difference route disagrees on the torus");

  BundleSpec g5;
  g5.algebra = proj;
  g5.add(LineBundle::gamma, 5);
  r.gamma5_route = total_class(g5);
  r.tangent_route = tangent_restriction_class(4, 2);
  if (r.gamma5_route != r.tangent_route) throw NumericalError("tangent bundle route disagrees with gamma^5");

  r.torus = evaluate_fundamental(r.w2_torus);
  r.projective = evaluate_fundamental(r.w2_projective);
  return r;
}

std::string format_report(const ObstructionReport& r) {
  std::ostringstream o;
  o << "torus T^2, H* = Lambda[a,b]\n";
  o << "  phi1+ = " << r.phi1_plus.to_string() << "\n";
  o << "  phi1- = " << r.phi1_minus.to_string() << "\n";
  o << "  w(phi1+) = " << r.w_phi1_plus.to_string() << "\n";
  o << "  w(phi1-) = " << r.w_phi1_minus.to_string() << "\n";
  o << "  w2(phi1+ - phi1-) = " << r.w2_torus.to_string() << "\n";
  o << "  w2(" << r.cor_plus.to_string() << " - (" << r.cor_minus.to_string() << ")) = " << r.w2_cor.to_string() << "\n";
  o << "projective plane RP^2, H* = Z2[t]/(t^3)\n";
  o << "  phi2+ = " << r.phi2_plus.to_string() << "\n";
  o << "  phi2- = " << r.phi2_minus.to_string() << "\n";
  o << "  w(phi2+) = " << r.w_phi2_plus.to_string() << "\n";
  o << "  w(phi2-) = " << r.w_phi2_minus.to_string() << "\n";
  o << "  w2(phi2+ - phi2-) = " << r.w2_projective.to_string() << "\n";
  o << "  w(g^5) = " << r.gamma5_route.to_string() << ", (1+t)^5 mod t^3 = " << r.tangent_route.to_string() << "\n";
  o << "w2(phi1+ - phi1-)[T^2] = " << r.torus << "\n";
  o << "w2(phi2+ - phi2-)[RP^2] = " << r.projective << "\n";
  o << "result (" << r.torus << "," << r.projective << ")\n";
  return o.str();
}

}  // namespace equipart
