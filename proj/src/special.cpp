#include "qps/special.hpp"

#include <algorithm>
#include <cmath>

namespace qps {

double log_factorial(int n) {
  static std::vector<double> table = {0.0};
  require(n >= 0, "math.domain", "factorial of negative integer");
  while ((int)table.size() <= n) table.push_back(table.back() + std::log((double)table.size()));
  return table[(size_t)n];
}

namespace {

bool triangle_ok(int ta, int tb, int tc) {
  return tc >= std::abs(ta - tb) && tc <= ta + tb && (ta + tb + tc) % 2 == 0;
}

}  // namespace

double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
  require(tj1 >= 0 && tj2 >= 0 && tj >= 0, "math.domain", "negative angular momentum");
  require((tj1 + tm1) % 2 == 0 && (tj2 + tm2) % 2 == 0 && (tj + tm) % 2 == 0, "math.domain",
          "projection must differ from j by an integer");
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tj) return 0.0;
  if (tm1 + tm2 != tm) return 0.0;
  if (!triangle_ok(tj1, tj2, tj)) return 0.0;

  // Racah's closed form. All factorial arguments below are written in doubled
  // units divided by 2; triangle and projection constraints keep them integral.
  auto lf = [](int twice) { return log_factorial(twice / 2); };

  double log_pref = 0.5 * (std::log(tj + 1.0) + lf(tj1 + tj2 - tj) + lf(tj1 - tj2 + tj) +
                           lf(-tj1 + tj2 + tj) - lf(tj1 + tj2 + tj + 2) + lf(tj + tm) +
                           lf(tj - tm) + lf(tj1 - tm1) + lf(tj1 + tm1) + lf(tj2 - tm2) +
                           lf(tj2 + tm2));

  int kmin = std::max({0, tj2 - tj - tm1, tj1 - tj + tm2});
  int kmax = std::min({tj1 + tj2 - tj, tj1 - tm1, tj2 + tm2});
  double sum = 0.0;
  for (int tk = kmin; tk <= kmax; tk += 2) {
    double log_den = lf(tk) + lf(tj1 + tj2 - tj - tk) + lf(tj1 - tm1 - tk) +
                     lf(tj2 + tm2 - tk) + lf(tj - tj2 + tm1 + tk) + lf(tj - tj1 - tm2 + tk);
    double term = std::exp(log_pref - log_den);
    sum += (tk / 2) % 2 == 0 ? term : -term;
  }
  return sum;
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m) {
  auto dbl = [](double x) {
    double t = 2.0 * x;
    double r = std::round(t);
    require(std::abs(t - r) < 1e-9, "math.domain", "angular momentum must be half-integer");
    return (int)r;
  };
  return clebsch_gordan_2(dbl(j1), dbl(m1), dbl(j2), dbl(m2), dbl(j), dbl(m));
}

// Associated Legendre P_l^m(x) with Condon-Shortley phase, m >= 0, scaled by
// sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) so the return value is the Y_lm modulus
// directly. The scaling is folded into the diagonal seed to avoid overflow.
double scaled_plm(int l, int m, double x) {
  require(l >= 0 && m >= 0 && m <= l, "math.domain", "invalid Legendre degree/order");
  double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = std::sqrt(1.0 / (4.0 * pi));
  for (int i = 1; i <= m; ++i)
    pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * somx2;
  if (l == m) return pmm;
  double pm1 = pmm;
  double p = x * std::sqrt(2.0 * m + 3.0) * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    double a = std::sqrt((4.0 * ll * ll - 1.0) / ((double)(ll - m) * (ll + m)));
    double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - m * m) /
                         (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    double pnew = a * (x * p - b * pm1);
    pm1 = p;
    p = pnew;
  }
  return p;
}

cd spherical_harmonic(int l, int m, double theta, double phi) {
  require(l >= 0, "math.domain", "negative harmonic degree");
  require(std::abs(m) <= l, "math.domain", "harmonic order exceeds degree");
  int am = std::abs(m);
  double plm = scaled_plm(l, am, std::cos(theta));
  cd val = plm * std::exp(cd(0.0, am * phi));
  if (m >= 0) return val;
  double sign = (am % 2 == 0) ? 1.0 : -1.0;
  return sign * std::conj(val);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, "math.domain", "quadrature order must be positive");
  nodes.assign((size_t)n, 0.0);
  weights.assign((size_t)n, 0.0);
  int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[(size_t)i] = -x;
    nodes[(size_t)(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[(size_t)i] = w;
    weights[(size_t)(n - 1 - i)] = w;
  }
}

}  // namespace qps
