#include "equipart/arrangement.hpp"

#include "equipart/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace equipart {

Hyperplane Hyperplane::make(const Vec& a, double c) {
  const double nrm = a.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InputError("hyperplane normal must be nonzero and finite");
  if (!std::isfinite(c)) throw InputError("hyperplane offset must be finite");
  return Hyperplane{a / nrm, c / nrm};
}

Configuration::Configuration(int dim_, std::vector<Vec> normals) : dim(dim_), u(std::move(normals)) {
  if (dim < 1 || dim > kMaxDim) throw InputError("configuration dimension must be in 1..4");
  if (static_cast<int>(u.size()) > dim) throw InputError("configuration has more hyperplanes than dimensions");
  for (const Vec& v : u) {
    if (v.size() != dim + 1) throw InputError("configuration vector has wrong length");
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) throw InputError("configuration vectors must be unit length");
  }
}

Configuration Configuration::normalized(int dim, std::vector<Vec> normals) {
  for (Vec& v : normals) {
    const double nrm = v.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InputError("configuration vector must be nonzero");
    v /= nrm;
  }
  return Configuration(dim, std::move(normals));
}

Configuration Configuration::from_hyperplanes(const std::vector<Hyperplane>& hs) {
  if (hs.empty()) throw InputError("no hyperplanes given");
  std::vector<Vec> u;
  for (const Hyperplane& h : hs) {
    if (h.dim() != hs.front().dim()) throw InputError("hyperplanes of mixed dimension");
    u.push_back(lift(h));
  }
  return Configuration(hs.front().dim(), std::move(u));
}

int Configuration::orthant_of(const Vec& x) const {
  int idx = 0;
  for (int i = 0; i < count(); ++i) {
    const double s = u[i].head(dim).dot(x) + u[i](dim);
    if (s < 0.0) idx |= 1 << i;
  }
  return idx;
}

bool Configuration::strict_orthant_of(const Vec& x, int& orthant, double tol) const {
  orthant = 0;
  for (int i = 0; i < count(); ++i) {
    const double s = u[i].head(dim).dot(x) + u[i](dim);
    if (std::abs(s) <= tol) return false;
    if (s < 0.0) orthant |= 1 << i;
  }
  return true;
}

std::vector<Hyperplane> Configuration::hyperplanes() const {
  std::vector<Hyperplane> out;
  for (const Vec& v : u) out.push_back(unlift(v));
  return out;
}

Vec lift(const Hyperplane& h) {
  const int n = h.dim();
  Vec u(n + 1);
  u.head(n) = h.a;
  u(n) = -h.c;
  return u / u.norm();
}

Hyperplane unlift(const Vec& u) {
  const int n = static_cast<int>(u.size()) - 1;
  if (n < 1) throw InputError("unlift: vector too short");
  const Vec a = u.head(n);
  if (a.cwiseAbs().maxCoeff() < 1e-12) throw InputError("unlift: hyperplane at infinity");
  const double nrm = a.norm();
  return Hyperplane{a / nrm, -u(n) / nrm};
}

double min_line_angle(const Configuration& config) {
  double best = kPi / 2;
  for (int i = 0; i < config.count(); ++i)
    for (int j = i + 1; j < config.count(); ++j) {
      const double dm = (config.u[i] - config.u[j]).norm();
      const double dp = (config.u[i] + config.u[j]).norm();
      best = std::min(best, 2.0 * std::asin(std::min(1.0, 0.5 * std::min(dm, dp))));
    }
  return best;
}

GroupElement GroupElement::identity(int n) {
  GroupElement g;
  g.signs.assign(n, 0);
  g.perm.resize(n);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  return g;
}

void GroupElement::validate() const {
  if (signs.size() != perm.size()) throw InputError("group element: sign and permutation lengths differ");
  std::vector<int> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= size() || seen[p]++) throw InputError("group element: permutation is not a bijection");
  }
  for (int s : signs)
    if (s != 0 && s != 1) throw InputError("group element: signs must be 0 or 1");
}

bool GroupElement::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (signs[j] || perm[j] != j) return false;
  return true;
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  // other sends u_j to position other.perm[j] with sign other.signs[j]; then this acts.
  GroupElement g;
  const int n = size();
  g.signs.resize(n);
  g.perm.resize(n);
  for (int j = 0; j < n; ++j) {
    const int mid = other.perm[j];
    g.perm[j] = perm[mid];
    g.signs[j] = other.signs[j] ^ signs[mid];
  }
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g;
  const int n = size();
  g.signs.resize(n);
  g.perm.resize(n);
  for (int j = 0; j < n; ++j) {
    g.perm[perm[j]] = j;
    g.signs[perm[j]] = signs[j];
  }
  return g;
}

std::vector<GroupElement> all_group_elements(int n) {
  std::vector<GroupElement> out;
  std::vector<int> p(n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::iota(p.begin(), p.end(), 0);
    do {
      GroupElement g;
      g.perm = p;
      g.signs.resize(n);
      for (int j = 0; j < n; ++j) g.signs[j] = (mask >> j) & 1;
      out.push_back(std::move(g));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

Configuration act(const GroupElement& g, const Configuration& config) {
  if (g.size() != config.count()) throw InputError("act: group element size differs from hyperplane count");
  std::vector<Vec> out(config.u.size());
  for (int j = 0; j < g.size(); ++j) out[g.perm[j]] = g.signs[j] ? Vec(-config.u[j]) : config.u[j];
  Configuration c;
  c.dim = config.dim;
  c.u = std::move(out);
  return c;
}

int act_index(const GroupElement& g, int beta) {
  int out = 0;
  for (int j = 0; j < g.size(); ++j)
    if (((beta >> j) & 1) ^ g.signs[j]) out |= 1 << g.perm[j];
  return out;
}

std::vector<double> act_masses(const GroupElement& g, const std::vector<double>& masses) {
  std::vector<double> out(masses.size());
  for (std::size_t b = 0; b < masses.size(); ++b) out[act_index(g, static_cast<int>(b))] = masses[b];
  return out;
}

Deviation deviation_from_masses(const MassVector& masses, double total) {
  const double share = total / static_cast<double>(masses.size());
  Deviation d(masses.size());
  for (std::size_t b = 0; b < masses.size(); ++b) d[b] = masses[b] - share;
  return d;
}

double residual_from_masses(const MassVector& masses, double total) {
  const double share = total / static_cast<double>(masses.size());
  double worst = 0.0;
  for (double m : masses) worst = std::max(worst, std::abs(m - share));
  return worst / total;
}

Deviation test_map(const Measure& measure, const Configuration& config) {
  return deviation_from_masses(orthant_masses(measure, config), total_mass(measure));
}

double residual(const Measure& measure, const Configuration& config) {
  return residual_from_masses(orthant_masses(measure, config), total_mass(measure));
}

double config_distance(const Configuration& a, const Configuration& b) {
  if (a.count() != b.count()) throw InputError("config_distance: hyperplane counts differ");
  double d = 0.0;
  for (int i = 0; i < a.count(); ++i) d = std::max(d, (a.u[i] - b.u[i]).norm());
  return d;
}

}  // namespace equipart
