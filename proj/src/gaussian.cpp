#include "equipart/gaussian.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace equipart::gauss {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kSureCut = 8.5;  // Phi(-8.5) ~ 1e-17
constexpr int kNodes = 30;

using Probs = std::array<double, 16>;
using Corr = std::array<std::array<double, 4>, 4>;

// Gauss-Legendre rule on [0,1] after t = 1 - (1-s)^2, which crowds nodes towards t = 1
// where the homotopy correlation matrix is closest to singular.
struct HomotopyRule {
  std::array<double, kNodes> t{};
  std::array<double, kNodes> w{};
  HomotopyRule() {
    using Rule = boost::math::quadrature::gauss<double, kNodes>;
    const auto& ab = Rule::abscissa();
    const auto& wt = Rule::weights();
    int k = 0;
    auto put = [&](double x, double wx) {
      const double s = 0.5 * (1.0 + x);
      t[k] = 1.0 - (1.0 - s) * (1.0 - s);
      w[k] = 0.5 * wx * 2.0 * (1.0 - s);
      ++k;
    };
    for (std::size_t i = 0; i < ab.size(); ++i) {
      put(ab[i], wt[i]);
      if (ab[i] != 0.0) put(-ab[i], wt[i]);
    }
  }
};

const HomotopyRule& rule() {
  static const HomotopyRule r;
  return r;
}

double bvn_density(double x, double y, double r) {
  const double s = 1.0 - r * r;
  return std::exp(-(x * x - 2.0 * r * x * y + y * y) / (2.0 * s)) / (kTwoPi * std::sqrt(s));
}

double cdf2(double x, double y, double r) { return bvn_upper(-x, -y, r); }

// Order the variables so the first one is the least correlated with the rest.
void pivot(int k, const double* h, const Corr& r, double* ho, Corr& ro) {
  int best = 0;
  double best_val = 2.0;
  for (int i = 0; i < k; ++i) {
    double m = 0.0;
    for (int j = 0; j < k; ++j)
      if (j != i) m = std::max(m, std::abs(r[i][j]));
    if (m < best_val) {
      best_val = m;
      best = i;
    }
  }
  std::array<int, 4> ord{};
  ord[0] = best;
  for (int i = 0, c = 1; i < k; ++i)
    if (i != best) ord[c++] = i;
  for (int i = 0; i < k; ++i) {
    ho[i] = h[ord[i]];
    for (int j = 0; j < k; ++j) ro[i][j] = r[ord[i]][ord[j]];
  }
}

// Plackett: decouple variable 0 by scaling its correlations by t and integrate
// dP/drho_0j = phi2(h0, hj; rho_0j) * P(rest <= h_rest | Y0 = h0, Yj = hj) over t in [0,1].
double cdf3(const double* hin, const Corr& rin) {
  double h[3];
  Corr r{};
  pivot(3, hin, rin, h, r);
  double acc = normal_cdf(h[0]) * cdf2(h[1], h[2], r[1][2]);
  if (r[0][1] == 0.0 && r[0][2] == 0.0) return acc;
  const auto& q = rule();
  for (int n = 0; n < kNodes; ++n) {
    const double t = q.t[n];
    double s = 0.0;
    for (int j = 1; j < 3; ++j) {
      if (r[0][j] == 0.0) continue;
      const int l = 3 - j;
      const double a = t * r[0][j], b = t * r[0][l], c = r[l][j];
      const double den = 1.0 - a * a;
      const double mu = ((b - a * c) * h[0] + (c - a * b) * h[j]) / den;
      const double var = std::max(1.0 - (b * b - 2.0 * a * b * c + c * c) / den, 1e-300);
      s += r[0][j] * bvn_density(h[0], h[j], a) * normal_cdf((h[l] - mu) / std::sqrt(var));
    }
    acc += q.w[n] * s;
  }
  return acc;
}

double cdf4(const double* hin, const Corr& rin) {
  double h[4];
  Corr r{};
  pivot(4, hin, rin, h, r);
  Corr r3{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r3[i][j] = r[i + 1][j + 1];
  double acc = normal_cdf(h[0]) * cdf3(h + 1, r3);
  const auto& q = rule();
  for (int n = 0; n < kNodes; ++n) {
    const double t = q.t[n];
    double s = 0.0;
    for (int j = 1; j < 4; ++j) {
      if (r[0][j] == 0.0) continue;
      int o[2];
      for (int l = 1, c = 0; l < 4; ++l)
        if (l != j) o[c++] = l;
      const double a = t * r[0][j];
      const double den = 1.0 - a * a;
      double mu[2], cv[2][2];
      for (int p = 0; p < 2; ++p) {
        const double r0l = t * r[0][o[p]], rjl = r[j][o[p]];
        mu[p] = ((r0l - a * rjl) * h[0] + (rjl - a * r0l) * h[j]) / den;
        for (int pp = 0; pp < 2; ++pp) {
          const double r0m = t * r[0][o[pp]], rjm = r[j][o[pp]];
          cv[p][pp] = r[o[p]][o[pp]] - (r0l * r0m - a * (r0l * rjm + rjl * r0m) + rjl * rjm) / den;
        }
      }
      const double s0 = std::sqrt(std::max(cv[0][0], 1e-300));
      const double s1 = std::sqrt(std::max(cv[1][1], 1e-300));
      const double rr = std::clamp(cv[0][1] / (s0 * s1), -1.0, 1.0);
      s += r[0][j] * bvn_density(h[0], h[j], a) * cdf2((h[o[0]] - mu[0]) / s0, (h[o[1]] - mu[1]) / s1, rr);
    }
    acc += q.w[n] * s;
  }
  return acc;
}

// P(Y_i >= 0 for all i in mask).
double upper_orthant(const StandardNormal& y, int mask) {
  double h[4];
  Corr r{};
  int idx[4];
  int k = 0;
  for (int i = 0; i < y.dim; ++i)
    if (mask & (1 << i)) idx[k++] = i;
  for (int a = 0; a < k; ++a) {
    h[a] = y.mean[idx[a]];
    for (int b = 0; b < k; ++b) r[a][b] = y.corr[idx[a]][idx[b]];
  }
  switch (k) {
    case 0: return 1.0;
    case 1: return normal_cdf(h[0]);
    case 2: return cdf2(h[0], h[1], r[0][1]);
    case 3: return cdf3(h, r);
    default: return cdf4(h, r);
  }
}

// Inclusion-exclusion over the negative coordinates of each pattern.
Probs free_orthants(const StandardNormal& y) {
  const int full = 1 << y.dim;
  std::array<double, 16> upper{};
  for (int mask = 0; mask < full; ++mask) upper[mask] = upper_orthant(y, mask);
  Probs out{};
  for (int beta = 0; beta < full; ++beta) {
    const int zeros = (full - 1) & ~beta;
    double p = 0.0;
    for (int sub = beta;; sub = (sub - 1) & beta) {
      p += (std::popcount(static_cast<unsigned>(sub)) % 2 ? -1.0 : 1.0) * upper[zeros | sub];
      if (sub == 0) break;
    }
    out[beta] = p;
  }
  return out;
}

}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double bvn_upper(double dh, double dk, double r) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (dh == inf || dk == inf) return 0.0;
  if (dh == -inf) return dk == -inf ? 1.0 : normal_cdf(-dk);
  if (dk == -inf) return normal_cdf(-dh);
  if (r == 0.0) return normal_cdf(-dh) * normal_cdf(-dk);

  static constexpr double w6[3] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
  static constexpr double x6[3] = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
  static constexpr double w12[6] = {.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                                    0.2031674267230659, 0.2334925365383547, 0.2491470458134029};
  static constexpr double x12[6] = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                                    0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
  static constexpr double w20[10] = {.01761400713915212, .04060142980038694, .06267204833410906,
                                     .08327674157670475, 0.1019301198172404, 0.1181945319615184,
                                     0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
                                     0.1527533871307259};
  static constexpr double x20[10] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                                     0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                                     0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
                                     0.07652652113349733};
  const double* w = w20;
  const double* x = x20;
  int lg = 10;
  if (std::abs(r) < 0.3) {
    w = w6;
    x = x6;
    lg = 3;
  } else if (std::abs(r) < 0.75) {
    w = w12;
    x = x12;
    lg = 6;
  }

  double h = dh, k = dk, hk = h * k, bvn = 0.0;
  if (std::abs(r) < 0.925) {
    const double hs = 0.5 * (h * h + k * k);
    const double asr = 0.5 * std::asin(r);
    for (int i = 0; i < lg; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (1.0 + sgn * x[i]));
        bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    bvn = bvn * asr / kTwoPi + normal_cdf(-h) * normal_cdf(-k);
  } else {
    if (r < 0) {
      k = -k;
      hk = -hk;
    }
    if (std::abs(r) < 1.0) {
      const double as = (1.0 - r) * (1.0 + r);
      double a = std::sqrt(as);
      const double bs = (h - k) * (h - k);
      const double c = (4.0 - hk) / 8.0;
      const double d = (12.0 - hk) / 80.0;
      double asr = -0.5 * (bs / as + hk);
      if (asr > -100.0) bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
      if (hk > -100.0) {
        const double b = std::sqrt(bs);
        const double sp = std::sqrt(kTwoPi) * normal_cdf(-b / a);
        bvn -= std::exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
      }
      a *= 0.5;
      double sum = 0.0;
      for (int i = 0; i < lg; ++i) {
        for (double sgn : {-1.0, 1.0}) {
          const double xs = (a * (1.0 + sgn * x[i])) * (a * (1.0 + sgn * x[i]));
          const double asr2 = -0.5 * (bs / xs + hk);
          if (asr2 <= -100.0) continue;
          const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
          const double rs = std::sqrt(1.0 - xs);
          const double ep = std::exp(-0.5 * hk * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
          sum += w[i] * std::exp(asr2) * (sp - ep);
        }
      }
      bvn = (a * sum - bvn) / kTwoPi;
    }
    if (r > 0) {
      bvn += normal_cdf(-std::max(h, k));
    } else if (h >= k) {
      bvn = -bvn;
    } else {
      const double l = h < 0 ? normal_cdf(k) - normal_cdf(h) : normal_cdf(-h) - normal_cdf(-k);
      bvn = l - bvn;
    }
  }
  return std::clamp(bvn, 0.0, 1.0);
}

std::array<double, 16> orthant_probabilities(const StandardNormal& y) {
  // Split into sure variables (sign fixed up to ~1e-17) and free ones.
  int fixed_bits = 0;
  std::array<int, 4> free_idx{};
  int nfree = 0;
  for (int i = 0; i < y.dim; ++i) {
    if (y.mean[i] > kSureCut) continue;
    if (y.mean[i] < -kSureCut) {
      fixed_bits |= 1 << i;
      continue;
    }
    free_idx[nfree++] = i;
  }
  StandardNormal sub;
  sub.dim = nfree;
  for (int a = 0; a < nfree; ++a) {
    sub.mean[a] = y.mean[free_idx[a]];
    for (int b = 0; b < nfree; ++b) sub.corr[a][b] = y.corr[free_idx[a]][free_idx[b]];
  }
  const Probs sp = free_orthants(sub);
  if (nfree == y.dim) return sp;
  Probs out{};
  for (int p = 0; p < (1 << nfree); ++p) {
    int idx = fixed_bits;
    for (int a = 0; a < nfree; ++a)
      if (p & (1 << a)) idx |= 1 << free_idx[a];
    out[idx] = sp[p];
  }
  return out;
}

}  // namespace equipart::gauss
