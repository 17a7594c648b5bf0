#include "qps/su2.hpp"

#include <cmath>
#include <mutex>
#include <set>

#include "qps/special.hpp"

namespace qps {

namespace {
std::mutex warn_mutex;
std::vector<std::string> warn_buffer;
std::set<std::string> warn_seen;
}  // namespace

void warn(const std::string& code, const std::string& what) {
  std::lock_guard<std::mutex> lock(warn_mutex);
  if (warn_seen.insert(code).second) warn_buffer.push_back(code + ": " + what);
}

std::vector<std::string> drain_warnings() {
  std::lock_guard<std::mutex> lock(warn_mutex);
  warn_seen.clear();
  return std::exchange(warn_buffer, {});
}

}  // namespace qps

namespace qps::su2 {

int dim_of(double j) {
  int dim = (int)std::lround(2.0 * j + 1.0);
  require(std::abs(2.0 * j + 1.0 - dim) < 1e-9 && dim >= 1, "spin.j",
          "j must be a non-negative half-integer");
  return dim;
}

Operator euler_rotation(double j, double phi, double theta, double Phi) {
  int dim = dim_of(j);
  Operator left = Operator::Zero(dim, dim);
  Operator right = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double m = j - k;
    left(k, k) = std::exp(cd(0.0, phi * m));
    right(k, k) = std::exp(cd(0.0, Phi * m));
  }
  return left * expm(cd(0.0, -theta) * spin_jy(j)) * right;
}

Operator multipole(double j, int l, int m) {
  int dim = dim_of(j);
  require(l >= 0 && l <= dim - 1 && std::abs(m) <= l, "spin.multipole",
          "multipole indices out of range");
  Operator t = Operator::Zero(dim, dim);
  double norm = std::sqrt((2.0 * l + 1.0) / (2.0 * j + 1.0));
  for (int kc = 0; kc < dim; ++kc) {
    double mp = j - kc;           // column projection
    double mn = mp + m;           // row projection
    if (mn > j + 1e-9 || mn < -j - 1e-9) continue;
    int kr = (int)std::lround(j - mn);
    t(kr, kc) = norm * clebsch_gordan(j, mp, l, m, j, mn);
  }
  return t;
}

double parity_coefficient(double j, int l) { return clebsch_gordan(j, j, l, 0, j, j); }

Operator parity(double j, double s) {
  int dim = dim_of(j);
  require(s >= -1.0 - 1e-12 && s <= 1.0 + 1e-12, "kernel.s", "s must lie in [-1, 1]");
  Operator p = Operator::Zero(dim, dim);
  double worst = 0.0;
  for (int l = 0; l <= dim - 1; ++l) {
    double c = parity_coefficient(j, l);
    double weight = std::pow(c, -s);
    worst = std::max(worst, weight);
    for (int k = 0; k < dim; ++k) {
      double m = j - k;
      p(k, k) += (2.0 * l + 1.0) / (2.0 * j + 1.0) * weight * clebsch_gordan(j, m, l, 0, j, m);
    }
  }
  if (worst > 1e12)
    warn("su2.parity.conditioning",
         "s-parity weights exceed 1e12; kernel evaluation is ill-conditioned");
  return p;
}

Operator kernel(double j, double s, double theta, double phi) {
  Operator u = euler_rotation(j, phi, theta, 0.0);
  return u * parity(j, s) * u.adjoint();
}

Vec coherent_state(double j, double theta, double phi) {
  Vec up = Vec::Zero(dim_of(j));
  up(0) = 1.0;
  return euler_rotation(j, phi, theta, 0.0) * up;
}

cd evaluate(const Operator& a, double j, double s, double theta, double phi) {
  require(a.rows() == dim_of(j) && a.cols() == a.rows(), "operator.shape",
          "operator dimension does not match 2j+1");
  return (a * kernel(j, s, theta, phi)).trace();
}

std::vector<double> evaluate_grid(const Operator& a, double j, double s, const SphereGrid& g) {
  Operator p = parity(j, s);
  std::vector<double> out;
  out.reserve(g.size());
  for (const auto& n : g.nodes) {
    Operator u = euler_rotation(j, n.phi, n.theta, 0.0);
    out.push_back(((u.adjoint() * a * u) * p).trace().real());
  }
  return out;
}

double q_function(const Operator& rho, double j, double theta, double phi) {
  Vec c = coherent_state(j, theta, phi);
  return (c.adjoint() * rho * c)(0).real();
}

cd weyl(const Operator& rho, double j, double phi, double theta, double Phi) {
  return (rho * euler_rotation(j, phi, theta, Phi)).trace();
}

cd HarmonicExpansion::eval(double theta, double phi) const {
  cd acc = 0.0;
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) acc += at(l, m) * spherical_harmonic(l, m, theta, phi);
  return acc;
}

// Kernel expansion used throughout: Pi^{(s)}(theta,phi) =
// sqrt(4pi/(2j+1)) sum_lm (C^{jj}_{jj,l0})^{-s} Y_lm(theta,phi) T_lm,
// so Tr[rho Pi^{(s)}] expands over Y_lm with coefficients
// sqrt(4pi/(2j+1)) (C_l)^{-s} Tr[rho T_lm].
HarmonicExpansion harmonic_expansion(const Operator& rho, double j, double s) {
  int dim = dim_of(j);
  require(rho.rows() == dim && rho.cols() == dim, "operator.shape",
          "operator dimension does not match 2j+1");
  HarmonicExpansion e;
  e.lmax = dim - 1;
  e.coeffs.assign((size_t)(dim * dim), 0.0);
  double pref = std::sqrt(4.0 * pi / (2.0 * j + 1.0));
  for (int l = 0; l <= e.lmax; ++l) {
    double cl = std::pow(parity_coefficient(j, l), -s);
    for (int m = -l; m <= l; ++m)
      e.at(l, m) = pref * cl * (rho * multipole(j, l, m)).trace();
  }
  return e;
}

Operator operator_from_expansion(const HarmonicExpansion& e, double j, double s) {
  int dim = dim_of(j);
  require(e.lmax <= dim - 1, "spin.multipole", "expansion degree exceeds 2j");
  Operator a = Operator::Zero(dim, dim);
  double pref = std::sqrt(4.0 * pi / (2.0 * j + 1.0));
  for (int l = 0; l <= e.lmax; ++l) {
    double cl = std::pow(parity_coefficient(j, l), -s);
    for (int m = -l; m <= l; ++m) {
      // e.at = pref*cl*Tr[rho T_lm] and Tr[rho T_lm] = (-1)^m a_{l,-m} with
      // a_{lm} = Tr[T^dag_lm rho], so rho = sum a_{lm} T_lm.
      cd tr = e.at(l, m) / (pref * cl);
      double sign = (m % 2 == 0) ? 1.0 : -1.0;
      a += sign * tr * multipole(j, l, -m);
    }
  }
  return a;
}

HarmonicExpansion p_reconstruct(const Operator& rho, double j) {
  return harmonic_expansion(rho, j, +1.0);
}

}  // namespace qps::su2
