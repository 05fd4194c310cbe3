#include "equipart/measure.hpp"

#include "equipart/curve.hpp"
#include "equipart/gaussian.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace equipart {
namespace {

using GL = boost::math::quadrature::gauss<double, 10>;
constexpr int kMaxDensityDegree = 19;  // exact for the 10-point Gauss-Legendre rule
constexpr int kMomentPanels = 64;

template <class F>
double gauss_legendre(double a, double b, F&& f) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (f(c - h * x[i]) + (x[i] != 0.0 ? f(c + h * x[i]) : 0.0));
  return h * s;
}

void check_vec(const Vec& v, int dim, const char* what) {
  if (v.size() != dim) throw InputError(std::string(what) + ": coordinate count differs from dimension");
  if (!v.allFinite()) throw InputError(std::string(what) + ": non-finite coordinate");
}

int curve_base_dim(const CurveMeasure& c) {
  switch (c.kind) {
    case CurveMeasure::Kind::gamma4: return 4;
    case CurveMeasure::Kind::moment: return c.placed() ? static_cast<int>(c.linear.cols()) : c.dim;
    default: return c.dim;
  }
}

Vec curve_base_point(const CurveMeasure& c, double t) {
  switch (c.kind) {
    case CurveMeasure::Kind::gamma4: return gamma4(t);
    case CurveMeasure::Kind::moment: return moment_point(t, curve_base_dim(c));
    default: return c.map(t);
  }
}

// Orthant masses of one normal component with mean m and covariance F F^T, added to out.
void add_gaussian_masses(const Vec& mean, const Mat& factor, double weight, const Configuration& config,
                         MassVector& out) {
  const int n = config.dim;
  const int k = config.count();
  gauss::StandardNormal y;
  y.dim = k;
  std::array<Eigen::VectorXd, 4> v;
  std::array<double, 4> sd{};
  for (int i = 0; i < k; ++i) {
    const auto a = config.u[i].head(n);
    const double mu = a.dot(mean) + config.u[i](n);
    v[i] = factor.transpose() * a;
    sd[i] = v[i].norm();
    if (sd[i] > 1e-300) {
      y.mean[i] = mu / sd[i];
    } else {
      y.mean[i] = mu < 0 ? -1e3 : 1e3;
    }
  }
  for (int i = 0; i < k; ++i) {
    y.corr[i][i] = 1.0;
    for (int j = i + 1; j < k; ++j) {
      const double r = (sd[i] > 1e-300 && sd[j] > 1e-300) ? std::clamp(v[i].dot(v[j]) / (sd[i] * sd[j]), -1.0, 1.0) : 0.0;
      y.corr[i][j] = y.corr[j][i] = r;
    }
  }
  const auto p = gauss::orthant_probabilities(y);
  for (int b = 0; b < (1 << k); ++b) out[static_cast<std::size_t>(b)] += weight * p[static_cast<std::size_t>(b)];
}

MassVector curve_masses(const CurveMeasure& c, const Configuration& config) {
  MassVector m(static_cast<std::size_t>(config.cells()), 0.0);
  if (c.kind == CurveMeasure::Kind::custom) {
    const double h = (c.hi - c.lo) / c.samples;
    for (int s = 0; s < c.samples; ++s) {
      const double t = c.lo + (s + 0.5) * h;
      m[static_cast<std::size_t>(config.orthant_of(c.point(t)))] += h * c.density_at(t);
    }
    return m;
  }
  // Exact splitting at the intersection parameters of the base curve.
  const int bd = curve_base_dim(c);
  std::vector<Vec> base;
  for (const Vec& u : config.u) {
    Vec p = c.pull_back(u);
    const double nrm = p.norm();
    if (nrm < 1e-300) {
      p = Vec::Zero(bd + 1);
      p(bd) = 1.0;  // curve lies inside the hyperplane: positive closed side
    } else {
      p /= nrm;
    }
    base.push_back(p);
  }
  Configuration bc;
  bc.dim = bd;
  bc.u = std::move(base);
  const bool cyclic = c.kind == CurveMeasure::Kind::gamma4 && c.hi - c.lo >= kTwoPi;
  std::vector<double> cuts;
  for (const Vec& u : bc.u) {
    const auto r = c.kind == CurveMeasure::Kind::gamma4 ? gamma4_intersections(u) : moment_intersections(u, c.lo, c.hi);
    for (double t : r) {
      if (c.kind == CurveMeasure::Kind::gamma4 && !cyclic) {
        // Bring into [lo, lo + 2pi).
        t = c.lo + std::fmod(std::fmod(t - c.lo, kTwoPi) + kTwoPi, kTwoPi);
        if (t > c.hi) continue;
      }
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> pieces;
  if (cyclic && !cuts.empty()) {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + kTwoPi;
      if (b > a) pieces.emplace_back(a, b);
    }
  } else {
    double a = c.lo;
    for (double t : cuts) {
      if (t > a && t < c.hi) {
        pieces.emplace_back(a, t);
        a = t;
      }
    }
    pieces.emplace_back(a, c.hi);
  }
  for (const auto& [a, b] : pieces) {
    const double mid = 0.5 * (a + b);
    const int label = bc.orthant_of(curve_base_point(c, mid));
    const double mass = c.uniform() ? b - a : gauss_legendre(a, b, [&](double t) { return c.density_at(t); });
    m[static_cast<std::size_t>(label)] += mass;
  }
  return m;
}

double curve_total(const CurveMeasure& c) {
  if (c.kind == CurveMeasure::Kind::custom) {
    const double h = (c.hi - c.lo) / c.samples;
    double s = 0.0;
    for (int k = 0; k < c.samples; ++k) s += h * c.density_at(c.lo + (k + 0.5) * h);
    return s;
  }
  if (c.uniform()) return c.hi - c.lo;
  return gauss_legendre(c.lo, c.hi, [&](double t) { return c.density_at(t); });
}

// Integral of density * g(point) along the curve.
template <class G>
auto curve_integral(const CurveMeasure& c, G&& g, decltype(g(Vec())) zero) {
  auto acc = zero;
  if (c.kind == CurveMeasure::Kind::custom || (c.kind == CurveMeasure::Kind::gamma4 && c.uniform())) {
    // Midpoint rule; exact for trigonometric polynomials of low degree on a full period.
    const int q = std::max(c.samples, 256);
    const double h = (c.hi - c.lo) / q;
    for (int k = 0; k < q; ++k) {
      const double t = c.lo + (k + 0.5) * h;
      acc += h * c.density_at(t) * g(c.point(t));
    }
    return acc;
  }
  const double h = (c.hi - c.lo) / kMomentPanels;
  for (int p = 0; p < kMomentPanels; ++p) {
    const double a = c.lo + p * h;
    const double cc = a + 0.5 * h, hh = 0.5 * h;
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        if (x[i] == 0.0 && sgn > 0) continue;
        const double t = cc + sgn * hh * x[i];
        acc += hh * w[i] * c.density_at(t) * g(c.point(t));
      }
    }
  }
  return acc;
}

double grid_interpolate(const GridDensity& g, const Vec& x) {
  const int n = g.dim;
  std::array<int, 4> i0{};
  std::array<double, 4> f{};
  for (int k = 0; k < n; ++k) {
    const double h = (g.upper(k) - g.lower(k)) / g.resolution[k];
    if (x(k) < g.lower(k) || x(k) > g.upper(k)) return 0.0;
    double s = (x(k) - g.lower(k)) / h - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(g.resolution[k] - 1));
    i0[k] = std::min(static_cast<int>(std::floor(s)), std::max(g.resolution[k] - 2, 0));
    f[k] = g.resolution[k] > 1 ? s - i0[k] : 0.0;
  }
  double val = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (int k = 0; k < n; ++k) {
      const int bit = (corner >> k) & 1;
      if (bit && g.resolution[k] == 1) {
        w = 0.0;
        break;
      }
      w *= bit ? f[k] : 1.0 - f[k];
      flat = flat * static_cast<std::size_t>(g.resolution[k]) + static_cast<std::size_t>(i0[k] + bit);
    }
    if (w != 0.0) val += w * g.density[flat];
  }
  return val;
}

Mat reflection_linear(const AffineReflection& r) { return r.linear(); }

}  // namespace

double GridDensity::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= (upper(k) - lower(k)) / resolution[k];
  return v;
}

Vec GridDensity::cell_center(std::size_t flat) const {
  Vec x(dim);
  for (int k = dim - 1; k >= 0; --k) {
    const auto r = static_cast<std::size_t>(resolution[k]);
    const std::size_t i = flat % r;
    flat /= r;
    const double h = (upper(k) - lower(k)) / resolution[k];
    x(k) = lower(k) + (static_cast<double>(i) + 0.5) * h;
  }
  return x;
}

double CurveMeasure::density_at(double t) const {
  double v = 0.0;
  for (auto it = density.rbegin(); it != density.rend(); ++it) v = v * t + *it;
  return density.empty() ? 1.0 : v;
}

Vec CurveMeasure::point(double t) const {
  Vec p = curve_base_point(*this, t);
  if (placed()) p = linear * p + offset;
  return p;
}

Vec CurveMeasure::pull_back(const Vec& u) const {
  if (!placed()) return u;
  const int n = static_cast<int>(linear.rows());
  const int bd = static_cast<int>(linear.cols());
  Vec out(bd + 1);
  const Eigen::VectorXd a = u.head(n);
  out.head(bd) = linear.transpose() * a;
  out(bd) = a.dot(offset) + u(n);
  return out;
}

Measure::Measure(PointCloud m) { init(std::move(m)); }
Measure::Measure(GridDensity m) { init(std::move(m)); }
Measure::Measure(CurveMeasure m) { init(std::move(m)); }
Measure::Measure(GaussianMixture m) { init(std::move(m)); }

int Measure::dim() const {
  return std::visit([](const auto& m) { return m.dim; }, impl_->value);
}

void Measure::init(Variant v) {
  auto impl = std::make_shared<Impl>();
  if (auto* pc = std::get_if<PointCloud>(&v)) {
    if (pc->dim < 1 || pc->dim > kMaxDim) throw InputError("points: dimension must be in 1..4");
    if (pc->points.size() != pc->weights.size()) throw InputError("points: weight count differs from point count");
    if (pc->points.empty()) throw InputError("points: empty cloud has zero mass");
    for (std::size_t i = 0; i < pc->points.size(); ++i) {
      check_vec(pc->points[i], pc->dim, "points");
      if (!(pc->weights[i] > 0.0) || !std::isfinite(pc->weights[i])) throw InputError("points: weights must be positive");
      impl->total += pc->weights[i];
      impl->max_atom = std::max(impl->max_atom, pc->weights[i]);
    }
    impl->atoms = pc->points;
    impl->atom_weights = pc->weights;
  } else if (auto* g = std::get_if<GridDensity>(&v)) {
    if (g->dim < 1 || g->dim > kMaxDim) throw InputError("grid: dimension must be in 1..4");
    check_vec(g->lower, g->dim, "grid lower corner");
    check_vec(g->upper, g->dim, "grid upper corner");
    if (static_cast<int>(g->resolution.size()) != g->dim) throw InputError("grid: resolution count differs from dimension");
    std::size_t cells = 1;
    for (int k = 0; k < g->dim; ++k) {
      if (!(g->lower(k) < g->upper(k))) throw InputError("grid: lower corner must be below upper corner");
      if (g->resolution[k] < 1) throw InputError("grid: resolution must be positive");
      cells *= static_cast<std::size_t>(g->resolution[k]);
    }
    if (g->density.size() != cells) throw InputError("grid: weight count differs from product of resolutions");
    const double vol = g->cell_volume();
    for (std::size_t c = 0; c < cells; ++c) {
      const double d = g->density[c];
      if (!(d >= 0.0) || !std::isfinite(d)) throw InputError("grid: weights must be nonnegative");
      if (d == 0.0) continue;
      impl->atoms.push_back(g->cell_center(c));
      impl->atom_weights.push_back(d * vol);
      impl->total += d * vol;
      impl->max_atom = std::max(impl->max_atom, d * vol);
    }
  } else if (auto* c = std::get_if<CurveMeasure>(&v)) {
    if (c->kind == CurveMeasure::Kind::gamma4 && !c->placed()) c->dim = 4;
    if (c->dim < 1 || c->dim > kMaxDim) throw InputError("curve: dimension must be in 1..4");
    if (c->samples < 256) throw InputError("curve: quadrature sample count must be at least 256");
    if (!(c->lo < c->hi) || !std::isfinite(c->lo) || !std::isfinite(c->hi)) throw InputError("curve: bad parameter interval");
    if (c->kind == CurveMeasure::Kind::custom && !c->map) throw InputError("curve: custom curve needs a map");
    if (static_cast<int>(c->density.size()) > kMaxDensityDegree + 1) throw InputError("curve: density degree too high");
    if (c->placed()) {
      if (c->linear.rows() != c->dim || c->offset.size() != c->dim) throw InputError("curve: placement dimension mismatch");
      if (c->kind == CurveMeasure::Kind::gamma4 && c->linear.cols() != 4) throw InputError("curve: gamma4 placement must have 4 columns");
    } else if (c->kind == CurveMeasure::Kind::gamma4 && c->dim != 4) {
      throw InputError("curve: gamma4 lives in R^4");
    }
    for (int k = 0; k <= c->samples; ++k) {
      const double t = c->lo + (c->hi - c->lo) * k / c->samples;
      if (c->density_at(t) < 0.0) throw InputError("curve: density must be nonnegative");
    }
    if (c->kind == CurveMeasure::Kind::custom && c->map(c->lo).size() != c->dim)
      throw InputError("curve: custom map has wrong dimension");
    impl->total = curve_total(*c);
  } else if (auto* gm = std::get_if<GaussianMixture>(&v)) {
    if (gm->dim < 1 || gm->dim > kMaxDim) throw InputError("gaussian mixture: dimension must be in 1..4");
    if (gm->weights.empty() || gm->weights.size() != gm->means.size() || gm->weights.size() != gm->factors.size())
      throw InputError("gaussian mixture: component arrays have different lengths");
    for (std::size_t k = 0; k < gm->weights.size(); ++k) {
      if (!(gm->weights[k] > 0.0) || !std::isfinite(gm->weights[k])) throw InputError("gaussian mixture: weights must be positive");
      check_vec(gm->means[k], gm->dim, "gaussian mixture mean");
      const Mat& f = gm->factors[k];
      if (f.rows() != gm->dim || f.cols() != gm->dim || !f.allFinite()) throw InputError("gaussian mixture: bad covariance factor");
      if (!(std::abs(f.determinant()) > 1e-300)) throw InputError("gaussian mixture: covariance is singular");
      impl->total += gm->weights[k];
    }
  }
  if (!(impl->total > 0.0) || !std::isfinite(impl->total)) throw InputError("measure has zero total mass");
  impl->value = std::move(v);
  impl_ = std::move(impl);
}

MassVector orthant_masses(const Measure& measure, const Configuration& config) {
  if (measure.dim() != config.dim) throw InputError("orthant_masses: measure and configuration dimensions differ");
  MassVector m(static_cast<std::size_t>(config.cells()), 0.0);
  if (measure.is_atomic()) {
    const auto& xs = measure.atoms();
    const auto& ws = measure.atom_weights();
    for (std::size_t i = 0; i < xs.size(); ++i) m[static_cast<std::size_t>(config.orthant_of(xs[i]))] += ws[i];
    return m;
  }
  if (const auto* c = std::get_if<CurveMeasure>(&measure.variant())) return curve_masses(*c, config);
  if (const auto* gm = std::get_if<GaussianMixture>(&measure.variant())) {
    for (std::size_t k = 0; k < gm->weights.size(); ++k) add_gaussian_masses(gm->means[k], gm->factors[k], gm->weights[k], config, m);
    return m;
  }
  return m;
}

double total_mass(const Measure& measure) { return measure.total(); }

Vec centroid(const Measure& measure) {
  const int n = measure.dim();
  Vec acc = Vec::Zero(n);
  if (measure.is_atomic()) {
    for (std::size_t i = 0; i < measure.atoms().size(); ++i) acc += measure.atom_weights()[i] * measure.atoms()[i];
  } else if (const auto* c = std::get_if<CurveMeasure>(&measure.variant())) {
    acc = curve_integral(*c, [](const Vec& x) { return x; }, Vec(Vec::Zero(n)));
  } else if (const auto* gm = std::get_if<GaussianMixture>(&measure.variant())) {
    for (std::size_t k = 0; k < gm->weights.size(); ++k) acc += gm->weights[k] * gm->means[k];
  }
  return acc / measure.total();
}

double rms_radius(const Measure& measure, const Vec& center) {
  double acc = 0.0;
  if (measure.is_atomic()) {
    for (std::size_t i = 0; i < measure.atoms().size(); ++i)
      acc += measure.atom_weights()[i] * (measure.atoms()[i] - center).squaredNorm();
  } else if (const auto* c = std::get_if<CurveMeasure>(&measure.variant())) {
    acc = curve_integral(*c, [&](const Vec& x) { return (x - center).squaredNorm(); }, 0.0);
  } else if (const auto* gm = std::get_if<GaussianMixture>(&measure.variant())) {
    for (std::size_t k = 0; k < gm->weights.size(); ++k)
      acc += gm->weights[k] * ((gm->means[k] - center).squaredNorm() + gm->factors[k].squaredNorm());
  }
  return std::sqrt(acc / measure.total());
}

Measure symmetrize(const Measure& measure, const AffineReflection& reflection) {
  const int n = measure.dim();
  if (reflection.dim() != n) throw InputError("symmetrize: reflection dimension differs from measure");
  const double tol = 1e-12;
  if (const auto* pc = std::get_if<PointCloud>(&measure.variant())) {
    PointCloud out;
    out.dim = n;
    auto add = [&](const Vec& p, double w) {
      for (std::size_t j = 0; j < out.points.size(); ++j) {
        if ((out.points[j] - p).cwiseAbs().maxCoeff() <= tol * std::max(1.0, p.cwiseAbs().maxCoeff())) {
          out.weights[j] += w;
          return;
        }
      }
      out.points.push_back(p);
      out.weights.push_back(w);
    };
    for (std::size_t i = 0; i < pc->points.size(); ++i) add(pc->points[i], 0.5 * pc->weights[i]);
    for (std::size_t i = 0; i < pc->points.size(); ++i) add(reflection.apply(pc->points[i]), 0.5 * pc->weights[i]);
    return Measure(std::move(out));
  }
  if (const auto* gm = std::get_if<GaussianMixture>(&measure.variant())) {
    GaussianMixture out;
    out.dim = n;
    const Mat lin = reflection_linear(reflection);
    auto add = [&](const Vec& m, const Mat& f, double w) {
      const Mat cov = f * f.transpose();
      for (std::size_t j = 0; j < out.means.size(); ++j) {
        const Mat cj = out.factors[j] * out.factors[j].transpose();
        if ((out.means[j] - m).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff()) &&
            (cj - cov).cwiseAbs().maxCoeff() <= tol * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
          out.weights[j] += w;
          return;
        }
      }
      out.means.push_back(m);
      out.factors.push_back(f);
      out.weights.push_back(w);
    };
    for (std::size_t k = 0; k < gm->weights.size(); ++k) add(gm->means[k], gm->factors[k], 0.5 * gm->weights[k]);
    for (std::size_t k = 0; k < gm->weights.size(); ++k)
      add(reflection.apply(gm->means[k]), lin * gm->factors[k], 0.5 * gm->weights[k]);
    return Measure(std::move(out));
  }
  if (const auto* g = std::get_if<GridDensity>(&measure.variant())) {
    // Output box: bounding box of the box and its mirror image, same cell size.
    Vec lo = g->lower, hi = g->upper;
    for (int corner = 0; corner < (1 << n); ++corner) {
      Vec x(n);
      for (int k = 0; k < n; ++k) x(k) = (corner >> k) & 1 ? g->upper(k) : g->lower(k);
      const Vec y = reflection.apply(x);
      lo = lo.cwiseMin(y);
      hi = hi.cwiseMax(y);
    }
    GridDensity out;
    out.dim = n;
    out.lower = lo;
    out.upper = hi;
    out.resolution.resize(n);
    for (int k = 0; k < n; ++k) {
      const double h = (g->upper(k) - g->lower(k)) / g->resolution[k];
      const int r = std::max(1, static_cast<int>(std::llround((hi(k) - lo(k)) / h)));
      out.resolution[k] = r;
    }
    std::size_t cells = 1;
    for (int r : out.resolution) cells *= static_cast<std::size_t>(r);
    out.density.resize(cells);
    double total = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      const Vec x = out.cell_center(c);
      out.density[c] = 0.5 * (grid_interpolate(*g, x) + grid_interpolate(*g, reflection.apply(x)));
      total += out.density[c];
    }
    if (!(total > 0.0)) throw NumericalError("symmetrize: resampled grid lost all mass");
    const double scale = measure.total() / (total * out.cell_volume());
    for (double& d : out.density) d *= scale;
    return Measure(std::move(out));
  }
  throw InputError("symmetrize: unsupported measure type for pushforward (curve)");
}

Measure transform(const Measure& measure, const Mat& a, const Vec& b) {
  const int n = measure.dim();
  if (a.rows() != n || a.cols() != n || b.size() != n) throw InputError("transform: dimension mismatch");
  if (!(std::abs(a.determinant()) > 1e-300)) throw InputError("transform: map must be invertible");
  if (const auto* pc = std::get_if<PointCloud>(&measure.variant())) {
    PointCloud out = *pc;
    for (Vec& p : out.points) p = a * p + b;
    return Measure(std::move(out));
  }
  if (const auto* gm = std::get_if<GaussianMixture>(&measure.variant())) {
    GaussianMixture out = *gm;
    for (std::size_t k = 0; k < out.means.size(); ++k) {
      out.means[k] = a * out.means[k] + b;
      out.factors[k] = a * out.factors[k];
    }
    return Measure(std::move(out));
  }
  if (const auto* c = std::get_if<CurveMeasure>(&measure.variant())) {
    CurveMeasure out = *c;
    if (out.placed()) {
      out.linear = a * out.linear;
      out.offset = a * out.offset + b;
    } else {
      out.linear = a;
      out.offset = b;
    }
    return Measure(std::move(out));
  }
  const auto& g = std::get<GridDensity>(measure.variant());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i == j && !(a(i, i) > 0.0)) || (i != j && a(i, j) != 0.0))
        throw InputError("transform: grids support only positive diagonal maps");
  GridDensity out = g;
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    out.lower(k) = a(k, k) * g.lower(k) + b(k);
    out.upper(k) = a(k, k) * g.upper(k) + b(k);
    det *= a(k, k);
  }
  for (double& d : out.density) d /= det;
  return Measure(std::move(out));
}

Measure make_gaussian(const Vec& mean, double sigma, double weight) {
  GaussianMixture g;
  g.dim = static_cast<int>(mean.size());
  g.weights = {weight};
  g.means = {mean};
  g.factors = {sigma * Mat::Identity(g.dim, g.dim)};
  return Measure(std::move(g));
}

Measure uniform_box(const Vec& lower, const Vec& upper, const std::vector<int>& resolution) {
  GridDensity g;
  g.dim = static_cast<int>(lower.size());
  g.lower = lower;
  g.upper = upper;
  g.resolution = resolution;
  std::size_t cells = 1;
  for (int r : resolution) cells *= static_cast<std::size_t>(std::max(r, 0));
  g.density.assign(cells, 1.0);
  return Measure(std::move(g));
}

}  // namespace equipart
