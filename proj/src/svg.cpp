#include "equipart/svg.hpp"

#include "equipart/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace equipart {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

const char* kTrackColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};

double normal_density(const Vec& x, const Vec& mean, const Mat& factor) {
  const Eigen::VectorXd z = factor.triangularView<Eigen::Lower>().solve(Eigen::VectorXd(x - mean));
  const Eigen::FullPivLU<Mat> lu(factor);
  return std::exp(-0.5 * z.squaredNorm()) / (2.0 * kPi * std::abs(lu.determinant()));
}

}  // namespace

std::string svg_planar(const Measure& measure, const Configuration& config, int size) {
  if (measure.dim() != 2 || (config.count() > 0 && config.dim != 2)) throw InputError("svg: planar measure and lines required");
  // View box: bounding box of the atoms, or mean +- 3 sd for mixtures, padded.
  Vec lo = make_vec({1e300, 1e300}), hi = make_vec({-1e300, -1e300});
  auto grow = [&](const Vec& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GridDensity>) {
          grow(v.lower);
          grow(v.upper);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          for (std::size_t k = 0; k < v.means.size(); ++k) {
            const double r = 3.0 * v.factors[k].norm();
            grow(v.means[k] - make_vec({r, r}));
            grow(v.means[k] + make_vec({r, r}));
          }
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          for (const Vec& p : v.points) grow(p);
        } else {
          for (int k = 0; k <= 256; ++k) grow(v.point(v.lo + (v.hi - v.lo) * k / 256));
        }
      },
      measure.variant());
  const double span = std::max({hi(0) - lo(0), hi(1) - lo(1), 1e-9});
  const Vec mid = 0.5 * (lo + hi);
  const double half = 0.55 * span;
  const double scale = size / (2.0 * half);
  auto sx = [&](double x) { return (x - (mid(0) - half)) * scale; };
  auto sy = [&](double y) { return ((mid(1) + half) - y) * scale; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << ' ' << size << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GridDensity>) {
          const double peak = std::max(1e-300, *std::max_element(v.density.begin(), v.density.end()));
          const double w = (v.upper(0) - v.lower(0)) / v.resolution[0] * scale;
          const double h = (v.upper(1) - v.lower(1)) / v.resolution[1] * scale;
          for (std::size_t k = 0; k < v.density.size(); ++k) {
            if (v.density[k] <= 0.0) continue;
            const Vec c = v.cell_center(k);
            const int g = 255 - static_cast<int>(200.0 * v.density[k] / peak);
            o << "<rect x=\"" << fmt(sx(c(0)) - 0.5 * w) << "\" y=\"" << fmt(sy(c(1)) - 0.5 * h) << "\" width=\""
              << fmt(w + 0.3) << "\" height=\"" << fmt(h + 0.3) << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
          }
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          constexpr int kPix = 64;
          std::vector<double> vals(kPix * kPix);
          for (int r = 0; r < kPix; ++r)
            for (int c = 0; c < kPix; ++c) {
              const Vec x = make_vec({mid(0) - half + (c + 0.5) * 2 * half / kPix, mid(1) + half - (r + 0.5) * 2 * half / kPix});
              double s = 0.0;
              for (std::size_t k = 0; k < v.means.size(); ++k) s += v.weights[k] * normal_density(x, v.means[k], v.factors[k]);
              vals[static_cast<std::size_t>(r * kPix + c)] = s;
            }
          const double peak = std::max(1e-300, *std::max_element(vals.begin(), vals.end()));
          const double cell = static_cast<double>(size) / kPix;
          for (int r = 0; r < kPix; ++r)
            for (int c = 0; c < kPix; ++c) {
              const int g = 255 - static_cast<int>(200.0 * vals[static_cast<std::size_t>(r * kPix + c)] / peak);
              if (g >= 254) continue;
              o << "<rect x=\"" << fmt(c * cell) << "\" y=\"" << fmt(r * cell) << "\" width=\"" << fmt(cell + 0.3)
                << "\" height=\"" << fmt(cell + 0.3) << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
            }
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          for (const Vec& p : v.points) o << "<circle cx=\"" << fmt(sx(p(0))) << "\" cy=\"" << fmt(sy(p(1))) << "\" r=\"2.5\"/>\n";
        } else {
          o << "<polyline fill=\"none\" stroke=\"black\" points=\"";
          for (int k = 0; k <= 256; ++k) {
            const Vec p = v.point(v.lo + (v.hi - v.lo) * k / 256);
            o << fmt(sx(p(0))) << ',' << fmt(sy(p(1))) << ' ';
          }
          o << "\"/>\n";
        }
      },
      measure.variant());
  for (int i = 0; i < config.count(); ++i) {
    const Hyperplane h = unlift(config.u[static_cast<std::size_t>(i)]);
    // Point on the line nearest the view centre, then +- a long run along the direction.
    const Vec foot = mid - (h.a.dot(mid) - h.c) * h.a;
    const Vec dir = make_vec({-h.a(1), h.a(0)});
    const Vec p = foot - 4.0 * half * dir, q = foot + 4.0 * half * dir;
    o << "<line x1=\"" << fmt(sx(p(0))) << "\" y1=\"" << fmt(sy(p(1))) << "\" x2=\"" << fmt(sx(q(0))) << "\" y2=\""
      << fmt(sy(q(1))) << "\" stroke=\"" << kTrackColors[i % 4] << "\" stroke-width=\"2\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_rings(const std::vector<SolutionPoint>& points, int ring_size) {
  const int cols = std::max(1, std::min<int>(4, static_cast<int>(points.size())));
  const int rows = std::max(1, (static_cast<int>(points.size()) + cols - 1) / cols);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * ring_size << "\" height=\"" << rows * ring_size
    << "\" font-family=\"sans-serif\" font-size=\"10\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double r = 0.36 * ring_size;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const SolutionPoint& sp = points[k];
    const double cx = (static_cast<int>(k) % cols + 0.5) * ring_size;
    const double cy = (static_cast<int>(k) / cols + 0.5) * ring_size;
    auto at = [&](double t, double rad) { return std::make_pair(cx + rad * std::cos(t), cy - rad * std::sin(t)); };
    const auto labels = arc_labels(sp.config, sp.phase);
    for (int j = 0; j < 16; ++j) {
      const double t0 = sp.phase + j * kPi / 8, t1 = t0 + kPi / 8;
      const auto [x0, y0] = at(t0, r);
      const auto [x1, y1] = at(t1, r);
      const int g = 90 + 10 * static_cast<int>(labels[static_cast<std::size_t>(j)]);
      o << "<path d=\"M " << fmt(x0) << ' ' << fmt(y0) << " A " << fmt(r) << ' ' << fmt(r) << " 0 0 0 " << fmt(x1) << ' '
        << fmt(y1) << "\" fill=\"none\" stroke=\"rgb(" << g << ',' << g << ',' << g << ")\" stroke-width=\"6\"/>\n";
      const auto [lx, ly] = at(0.5 * (t0 + t1), r + 16);
      char word[8];
      std::snprintf(word, sizeof word, "%u%u%u%u", labels[static_cast<std::size_t>(j)] & 1U,
                    (labels[static_cast<std::size_t>(j)] >> 1) & 1U, (labels[static_cast<std::size_t>(j)] >> 2) & 1U,
                    (labels[static_cast<std::size_t>(j)] >> 3) & 1U);
      o << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << word
        << "</text>\n";
    }
    for (int track = 0; track < 4; ++track)
      for (int idx : sp.division[static_cast<std::size_t>(track)]) {
        const auto [px, py] = at(sp.phase + idx * kPi / 8, r);
        o << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"4\" fill=\"" << kTrackColors[track] << "\"/>\n";
      }
    o << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy) << "\" text-anchor=\"middle\">phase " << fmt(sp.phase) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace equipart
