#include "qps/sun.hpp"

#include <cmath>

#include "qps/operators.hpp"

namespace qps::sun {

namespace {

void check_n(int n) { require(n >= 2 && n <= 8, "sun.n", "N must lie in [2, 8]"); }

Operator sym_gen(int n, int j, int k) {
  Operator m = Operator::Zero(n, n);
  m(j - 1, k - 1) = 1.0;
  m(k - 1, j - 1) = 1.0;
  return m;
}

Operator anti_gen(int n, int j, int k) {
  Operator m = Operator::Zero(n, n);
  m(j - 1, k - 1) = cd(0.0, -1.0);
  m(k - 1, j - 1) = cd(0.0, 1.0);
  return m;
}

Operator diag_gen(int n, int k) {
  Operator m = Operator::Zero(n, n);
  double norm = std::sqrt(2.0 / ((double)k * (k - 1)));
  for (int i = 0; i < k - 1; ++i) m(i, i) = norm;
  m(k - 1, k - 1) = -norm * (k - 1);
  return m;
}

// Rotation-angle slot for the (a, b) factor, 0-based into the phi/theta packs.
int angle_index(int n, int a, int b) {
  int offset = 0;
  for (int i = 1; i <= n - a; ++i) offset += n - i;
  return offset + (b - 2);
}

}  // namespace

std::vector<Operator> generators(int n) {
  check_n(n);
  std::vector<Operator> gs;
  gs.reserve((size_t)(n * n - 1));
  for (int k = 2; k <= n; ++k) {
    for (int j = 1; j < k; ++j) {
      gs.push_back(sym_gen(n, j, k));
      gs.push_back(anti_gen(n, j, k));
    }
    gs.push_back(diag_gen(n, k));
  }
  return gs;
}

int angle_count(int n) { return n * (n - 1) + (n - 1); }

Operator euler_rotation(int n, const std::vector<double>& angles) {
  check_n(n);
  require((int)angles.size() == angle_count(n), "sun.angles",
          "expected N(N-1)+(N-1) Euler angles");
  int n_rot = n * (n - 1) / 2;
  Operator lam3 = Operator::Zero(n, n);
  lam3(0, 0) = 1.0;
  lam3(1, 1) = -1.0;

  Operator u = Operator::Identity(n, n);
  for (int a = n; a >= 2; --a) {
    for (int b = 2; b <= a; ++b) {
      int idx = angle_index(n, a, b);
      double phi = angles[(size_t)idx];
      double theta = angles[(size_t)(n_rot + idx)];
      Operator y = Operator::Zero(n, n);
      y(b - 1, 0) = cd(0.0, 1.0);
      y(0, b - 1) = cd(0.0, -1.0);
      u = u * expm(cd(0.0, phi) * lam3) * expm(cd(0.0, theta) * y);
    }
  }
  for (int c = 1; c <= n - 1; ++c)
    u = u * expm(cd(0.0, angles[(size_t)(2 * n_rot + c - 1)]) * diag_gen(n, c + 1));
  return u;
}

Vec coherent_state(int n, const std::vector<double>& angles) {
  Vec lowest = Vec::Zero(n);
  lowest(n - 1) = 1.0;
  return euler_rotation(n, angles) * lowest;
}

Operator kernel_from_vector(double s, const Vec& v) {
  int n = (int)v.size();
  check_n(n);
  require(std::abs(v.norm() - 1.0) < 1e-10, "sun.state", "coherent vector must be normalized");
  require(s >= -1.0 - 1e-12 && s <= 1.0 + 1e-12, "kernel.s", "s must lie in [-1, 1]");
  double c = std::pow(n + 1.0, 0.5 * (1.0 + s));
  Operator eye = Operator::Identity(n, n);
  return eye / n + c * (projector(v) - eye / n);
}

Operator kernel(int n, double s, const std::vector<double>& angles) {
  return kernel_from_vector(s, coherent_state(n, angles));
}

Operator parity(int n, double s) {
  check_n(n);
  Vec lowest = Vec::Zero(n);
  lowest(n - 1) = 1.0;
  return kernel_from_vector(s, lowest);
}

double s_transform(int n, double s1, double s2, double value, double trace) {
  check_n(n);
  return trace / n + std::pow(n + 1.0, 0.5 * (s1 - s2)) * (value - trace / n);
}

std::vector<double> generator_weyl(const Operator& rho) {
  int n = (int)rho.rows();
  check_n(n);
  require(rho.cols() == n, "operator.shape", "operator must be square");
  std::vector<double> chi;
  chi.reserve((size_t)(n * n - 1));
  for (const auto& g : generators(n)) chi.push_back((rho * g).trace().real());
  return chi;
}

Operator generator_weyl_inverse(int n, double trace, const std::vector<double>& chi) {
  check_n(n);
  require((int)chi.size() == n * n - 1, "sun.weyl", "expected N^2-1 components");
  Operator rho = trace * Operator::Identity(n, n) / n;
  auto gs = generators(n);
  for (size_t k = 0; k < gs.size(); ++k) rho += 0.5 * chi[k] * gs[k];
  return rho;
}

double phase_space_value(const Operator& a, double s, const Vec& v) {
  int n = (int)v.size();
  check_n(n);
  require(std::abs(v.norm() - 1.0) < 1e-10, "sun.state", "coherent vector must be normalized");
  require(s >= -1.0 - 1e-12 && s <= 1.0 + 1e-12, "kernel.s", "s must lie in [-1, 1]");
  double c = std::pow(n + 1.0, 0.5 * (1.0 + s));
  cd tr = a.trace();
  cd quad = v.dot(a * v);
  return (tr / static_cast<double>(n) + c * (quad - tr / static_cast<double>(n))).real();
}

}  // namespace qps::sun
