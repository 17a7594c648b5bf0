#include "qps/hw.hpp"

#include <algorithm>
#include <cmath>

#include "qps/operators.hpp"
#include "qps/special.hpp"

namespace qps::hw {

namespace {

int dim_check(const Operator& rho) {
  require(rho.rows() == rho.cols() && rho.rows() >= 1, "operator.shape",
          "operator must be square");
  return (int)rho.rows() - 1;
}

double laguerre(int n, int k, double x) {
  double l0 = 1.0, l1 = 1.0 + k - x;
  if (n == 0) return l0;
  for (int i = 2; i <= n; ++i) {
    double l2 = ((2.0 * i - 1.0 + k - x) * l1 - (i - 1.0 + k) * l0) / i;
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

// <m|D(xi)|n> of the untruncated displacement, m >= n:
// sqrt(n!/m!) xi^{m-n} e^{-|xi|^2/2} L_n^{(m-n)}(|xi|^2), log-space magnitude.
cd displacement_element(int m, int n, cd xi) {
  bool flip = m < n;
  if (flip) {
    std::swap(m, n);
    xi = -std::conj(xi);
  }
  int k = m - n;
  double x = std::norm(xi);
  double log_mag = 0.5 * (log_factorial(n) - log_factorial(m)) - 0.5 * x;
  cd dir(1.0, 0.0);
  if (k > 0) {
    double r = std::abs(xi);
    if (r == 0.0) return 0.0;
    log_mag += k * std::log(r);
    dir = std::pow(xi / r, k);
  }
  return std::exp(log_mag) * laguerre(n, k, x) * dir;
}

}  // namespace

Operator lowering(int n_max) {
  require(n_max >= 0, "fock.cutoff", "n_max must be non-negative");
  Operator a = Operator::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt((double)n);
  return a;
}

Operator raising(int n_max) { return lowering(n_max).adjoint(); }

Operator number(int n_max) {
  Operator n = Operator::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = k;
  return n;
}

Vec fock_state(int n_max, int n) {
  require(n >= 0 && n <= n_max, "fock.level", "Fock level exceeds cutoff");
  Vec v = Vec::Zero(n_max + 1);
  v(n) = 1.0;
  return v;
}

Vec coherent_state(int n_max, cd alpha) {
  Vec v = displacement(n_max, alpha) * fock_state(n_max, 0);
  return v / v.norm();
}

Operator displacement(int n_max, cd xi, double s) {
  if (std::norm(xi) > 0.7 * n_max)
    warn("hw.displacement.truncation",
         "|xi|^2 approaches the cutoff: the projected displacement loses norm");
  Operator d(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m)
    for (int n = 0; n <= n_max; ++n) d(m, n) = displacement_element(m, n, xi);
  if (s != 0.0) d *= std::exp(0.5 * s * std::norm(xi));
  return d;
}

Operator parity(int n_max, double s) {
  require(s >= -1.0 - 1e-12 && s < 1.0 - 1e-12, "kernel.s",
          "s-kernel generator is unbounded for s -> +1; use the characteristic transform");
  Operator p = Operator::Zero(n_max + 1, n_max + 1);
  double base = (s + 1.0) / (s - 1.0);
  double pref = 2.0 / (1.0 - s);
  for (int n = 0; n <= n_max; ++n) p(n, n) = pref * (n == 0 ? 1.0 : std::pow(base, n));
  return p;
}

Operator kernel(int n_max, cd alpha, double s) {
  if (s == 0.0) {
    // D(alpha) (-1)^N D(alpha)^dag = D(2 alpha) (-1)^N, so the Wigner kernel
    // elements come straight from one displacement with no internal sum to
    // truncate.
    Operator k(n_max + 1, n_max + 1);
    for (int m = 0; m <= n_max; ++m)
      for (int n = 0; n <= n_max; ++n)
        k(m, n) = 2.0 * (n % 2 ? -1.0 : 1.0) * displacement_element(m, n, 2.0 * alpha);
    return k;
  }
  Operator d = displacement(n_max, alpha);
  return d * parity(n_max, s) * d.adjoint();
}

double value_s(const Operator& rho, cd alpha, double s) {
  int n_max = dim_check(rho);
  return (rho * kernel(n_max, alpha, s)).trace().real();
}

double wigner(const Operator& rho, cd alpha) { return value_s(rho, alpha, 0.0); }

double husimi_q(const Operator& rho, cd alpha) {
  int n_max = dim_check(rho);
  Vec cs = coherent_state(n_max, alpha);
  return (cs.adjoint() * rho * cs)(0).real();
}

cd characteristic(const Operator& rho, cd xi, double s) {
  int n_max = dim_check(rho);
  return (rho * displacement(n_max, xi, s)).trace();
}

cd glauber_p_char(const Operator& rho, cd xi) { return characteristic(rho, xi, +1.0); }

WeylEstimate ancilla_weyl_protocol(const Operator& rho, cd alpha, long shots,
                                   std::uint64_t seed) {
  int n_max = dim_check(rho);
  int df = n_max + 1;
  // exp(-(1/2) sz (x) (alpha a^dag - alpha* a)) is block diagonal with
  // conditional displacements D(-alpha/2), D(+alpha/2).
  Operator dm = displacement(n_max, -0.5 * alpha);
  Operator dp = displacement(n_max, 0.5 * alpha);
  Operator r = Operator::Zero(2 * df, 2 * df);
  r.block(0, 0, df, df) = dm;
  r.block(df, df, df, df) = dp;

  Operator plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  Operator total = r * kron(plus, rho) * r.adjoint();
  double ex = (total * kron(pauli_x(), Operator::Identity(df, df))).trace().real();
  double ey = (total * kron(pauli_y(), Operator::Identity(df, df))).trace().real();

  WeylEstimate est;
  est.shots = shots;
  if (shots <= 0) {
    est.value = cd(ex, ey);
    return est;
  }
  long nx = shots / 2;
  long ny = shots - nx;
  require(nx > 0 && ny > 0, "protocol.shots", "need at least 2 shots");
  std::mt19937_64 rng(seed);
  std::binomial_distribution<long> bx(nx, std::clamp(0.5 * (1.0 + ex), 0.0, 1.0));
  std::binomial_distribution<long> by(ny, std::clamp(0.5 * (1.0 + ey), 0.0, 1.0));
  double px = (double)bx(rng) / nx;
  double py = (double)by(rng) / ny;
  est.value = cd(2.0 * px - 1.0, 2.0 * py - 1.0);
  est.std_error = 2.0 * std::sqrt(std::max(px * (1.0 - px), 1e-12) / nx +
                                  std::max(py * (1.0 - py), 1e-12) / ny);
  return est;
}

std::vector<double> marginal(const std::vector<std::vector<double>>& w, double dq, double dp,
                             int axis) {
  require(!w.empty() && !w.front().empty(), "marginal.grid", "empty sample grid");
  require(axis == 0 || axis == 1, "marginal.axis", "axis must be 0 (q profile) or 1 (p profile)");
  size_t nq = w.size(), np = w.front().size();
  for (const auto& row : w)
    require(row.size() == np, "marginal.grid", "ragged sample grid");
  std::vector<double> out;
  if (axis == 0) {
    out.resize(nq, 0.0);
    for (size_t i = 0; i < nq; ++i) {
      double acc = 0.0;
      for (size_t k = 0; k < np; ++k)
        acc += w[i][k] * ((k == 0 || k == np - 1) ? 0.5 : 1.0);
      out[i] = acc * dp / (2.0 * pi);
    }
  } else {
    out.resize(np, 0.0);
    for (size_t k = 0; k < np; ++k) {
      double acc = 0.0;
      for (size_t i = 0; i < nq; ++i)
        acc += w[i][k] * ((i == 0 || i == nq - 1) ? 0.5 : 1.0);
      out[k] = acc * dq / (2.0 * pi);
    }
  }
  return out;
}

}  // namespace qps::hw
